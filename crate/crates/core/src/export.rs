//! File formats: generator triplets, state manifests and observable tables.

use std::fmt::Display;
use std::io::Write;

use serde::Serialize;

use crate::dynamics::SparseGenerator;
use crate::model::ColoredWord;
use crate::symbolic::Scalar;
use crate::Result;

/// Off-diagonal generator entries as CSV `source,target,rate`, indices into
/// the state manifest. Diagonal entries are omitted: each is minus the sum
/// of its column.
pub fn write_triplets<T: Scalar + Display, W: Write>(gen: &SparseGenerator<T>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["source", "target", "rate"])?;
    for (s, t, r) in gen.entries() {
        w.write_record([s.to_string(), t.to_string(), r.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// CSV `index,state` with zero-based indices matching [`write_triplets`].
pub fn write_state_manifest<W: Write>(states: &[ColoredWord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["index", "state"])?;
    for (i, s) in states.iter().enumerate() {
        w.write_record([i.to_string(), s.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Any serializable flat records as CSV with a header row.
pub fn write_csv<R: Serialize, W: Write>(rows: &[R], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Pretty JSON followed by a newline.
pub fn write_json<V: Serialize + ?Sized, W: Write>(value: &V, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::build_symbolic;
    use crate::observables::ObservableRow;

    #[test]
    fn triplets_index_the_manifest() {
        let gen = build_symbolic(3, 1, 1000).unwrap();
        let mut t = Vec::new();
        write_triplets(&gen, &mut t).unwrap();
        let mut m = Vec::new();
        write_state_manifest(gen.states(), &mut m).unwrap();
        let t = String::from_utf8(t).unwrap();
        let m = String::from_utf8(m).unwrap();
        assert!(t.starts_with("source,target,rate\n"));
        assert_eq!(t.lines().count(), gen.entries().len() + 1);
        assert_eq!(m.lines().count(), gen.len() + 1);
    }

    #[test]
    fn rows_have_header() {
        let rows = vec![ObservableRow {
            observable: "x".into(),
            row: Some(1),
            column: None,
            closed_form: "1/2".into(),
            oracle: "1/2".into(),
            equal: true,
        }];
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "observable,row,column,closed_form,oracle,equal\nx,1,,1/2,1/2,true\n");
    }
}
