use super::{ColoredWord, Symbol};
use crate::par::*;
use crate::{Error, Result};

/// `binom(L-1, n-1) * n^(L-n)`, the number of restricted configurations.
pub fn restricted_count(l: usize, n: usize) -> Result<u64> {
    check_sizes(l, n)?;
    let b = binomial(l as u64 - 1, n as u64 - 1).ok_or_else(overflow)?;
    let pow = (n as u64).checked_pow((l - n) as u32).ok_or_else(overflow)?;
    b.checked_mul(pow).ok_or_else(overflow)
}

/// `L * binom(L-1, n-1) * n^(L-n)`, the size of the full state space.
pub fn full_count(l: usize, n: usize) -> Result<u64> {
    restricted_count(l, n)?.checked_mul(l as u64).ok_or_else(overflow)
}

fn overflow() -> Error {
    Error::domain("state count overflows u64")
}

pub(crate) fn check_sizes(l: usize, n: usize) -> Result<()> {
    if n == 0 || n > l {
        return Err(Error::domain(format!("need 1 <= n <= L, got L={l}, n={n}")));
    }
    Ok(())
}

pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).ok()
}

/// All restricted words (first letter `Bullet(0)`) in lexicographic order.
pub fn enumerate_restricted(l: usize, n: usize) -> Result<Vec<ColoredWord>> {
    enumerate_restricted_capped(l, n, u64::MAX)
}

pub fn enumerate_restricted_capped(l: usize, n: usize, cap: u64) -> Result<Vec<ColoredWord>> {
    let count = restricted_count(l, n)?;
    if count > cap {
        return Err(Error::ResourceCap { states: count, cap });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut buf = Vec::with_capacity(l);
    buf.push(Symbol::Bullet(0));
    extend_lex(l, n, 1, &mut buf, &mut out);
    Ok(out)
}

// Depth-first over letters in symbol order, which yields lexicographic output.
fn extend_lex(l: usize, n: usize, next_bullet: usize, buf: &mut Vec<Symbol>, out: &mut Vec<ColoredWord>) {
    if buf.len() == l {
        out.push(ColoredWord::from_letters_unchecked(n, buf.clone()));
        return;
    }
    let remaining = l - buf.len();
    let bullets_left = n - next_bullet;
    if bullets_left > 0 {
        buf.push(Symbol::Bullet(next_bullet));
        extend_lex(l, n, next_bullet + 1, buf, out);
        buf.pop();
    }
    if remaining > bullets_left {
        for k in 0..n {
            buf.push(Symbol::Box(k));
            extend_lex(l, n, next_bullet, buf, out);
            buf.pop();
        }
    }
}

/// Same output as [`enumerate_restricted`], built by splitting on bullet
/// placements and filling the boxes of each placement independently. The
/// pieces are merged back into lexicographic order.
pub fn enumerate_restricted_by_placement(l: usize, n: usize) -> Result<Vec<ColoredWord>> {
    restricted_count(l, n)?;
    let placements = bullet_placements(l, n);
    let mut out: Vec<ColoredWord> = into_par_iter!(placements).flat_map_iter(|pos| fill_boxes(l, n, pos)).collect();
    sort_words(&mut out);
    Ok(out)
}

#[cfg(not(feature = "parallel"))]
trait FlatMapIter: Iterator + Sized {
    fn flat_map_iter<U: IntoIterator, F: FnMut(Self::Item) -> U>(self, f: F) -> std::iter::FlatMap<Self, U, F> {
        self.flat_map(f)
    }
}
#[cfg(not(feature = "parallel"))]
impl<I: Iterator> FlatMapIter for I {}

fn sort_words(v: &mut [ColoredWord]) {
    #[cfg(feature = "parallel")]
    v.par_sort_unstable();
    #[cfg(not(feature = "parallel"))]
    v.sort_unstable();
}

/// Positions of `Bullet(1..n)` for restricted words, `Bullet(0)` fixed at 0.
fn bullet_placements(l: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0];
    fn rec(l: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().unwrap() + 1;
        let need_after = n - cur.len() - 1;
        for p in start..l - need_after {
            cur.push(p);
            rec(l, n, cur, out);
            cur.pop();
        }
    }
    rec(l, n, &mut cur, &mut out);
    out
}

fn fill_boxes(l: usize, n: usize, bullets: Vec<usize>) -> Vec<ColoredWord> {
    let mut template = vec![Symbol::Box(0); l];
    for (k, &p) in bullets.iter().enumerate() {
        template[p] = Symbol::Bullet(k);
    }
    let holes: Vec<usize> = (0..l).filter(|j| !bullets.contains(j)).collect();
    let total = n.pow(holes.len() as u32);
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; holes.len()];
    for _ in 0..total {
        let mut letters = template.clone();
        for (h, &d) in holes.iter().zip(&digits) {
            letters[*h] = Symbol::Box(d);
        }
        out.push(ColoredWord::from_letters_unchecked(n, letters));
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < n {
                break;
            }
            *d = 0;
        }
    }
    out
}

/// The full state space: every rotation of every restricted word, sorted.
pub fn enumerate_full(l: usize, n: usize, cap: u64) -> Result<Vec<ColoredWord>> {
    let count = full_count(l, n)?;
    if count > cap {
        return Err(Error::ResourceCap { states: count, cap });
    }
    let restricted = enumerate_restricted(l, n)?;
    let mut out: Vec<ColoredWord> =
        par_iter!(restricted).flat_map_iter(|w| (0..l).map(move |s| super::rotate(w, s))).collect();
    sort_words(&mut out);
    Ok(out)
}

/// Index of `w` in a sorted state list.
pub fn state_index(states: &[ColoredWord], w: &ColoredWord) -> Option<usize> {
    states.binary_search(w).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_example_has_twelve() {
        let ws = enumerate_restricted(4, 2).unwrap();
        let got: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        let mut listed = vec![
            "B1 B2 b1 b1",
            "B1 B2 b1 b2",
            "B1 B2 b2 b1",
            "B1 B2 b2 b2",
            "B1 b1 B2 b1",
            "B1 b1 B2 b2",
            "B1 b2 B2 b1",
            "B1 b2 B2 b2",
            "B1 b1 b1 B2",
            "B1 b1 b2 B2",
            "B1 b2 b1 B2",
            "B1 b2 b2 B2",
        ];
        listed.sort_by_key(|s| s.parse::<ColoredWord>().unwrap());
        assert_eq!(got, listed);
    }

    #[test]
    fn single_species() {
        let ws = enumerate_restricted(6, 1).unwrap();
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].to_string(), "B1 b1 b1 b1 b1 b1");
    }

    #[test]
    fn all_bullets() {
        let ws = enumerate_restricted(3, 3).unwrap();
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].to_string(), "B1 B2 B3");
    }

    #[test]
    fn n_larger_than_l_is_rejected() {
        assert!(matches!(enumerate_restricted(2, 3), Err(Error::Domain(_))));
        assert!(matches!(enumerate_restricted(2, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn ten_four_count() {
        // binom(9,3) * 4^6
        assert_eq!(restricted_count(10, 4).unwrap(), 84 * 4096);
        assert_eq!(enumerate_restricted(10, 4).unwrap().len(), 344_064);
    }

    #[test]
    fn two_routes_agree() {
        for l in 1..=7 {
            for n in 1..=l {
                assert_eq!(
                    enumerate_restricted(l, n).unwrap(),
                    enumerate_restricted_by_placement(l, n).unwrap(),
                    "L={l} n={n}"
                );
            }
        }
    }

    #[test]
    fn full_space_is_l_times_restricted() {
        let full = enumerate_full(5, 2, u64::MAX).unwrap();
        assert_eq!(full.len() as u64, 5 * restricted_count(5, 2).unwrap());
        assert!(full.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cap_is_enforced() {
        match enumerate_full(6, 3, 100) {
            Err(Error::ResourceCap { states, cap }) => {
                assert_eq!(states, 1620);
                assert_eq!(cap, 100);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }
}
