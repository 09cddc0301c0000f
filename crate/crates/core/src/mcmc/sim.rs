use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::Serialize;

use super::ledger::CrossingLedger;
use crate::dynamics::{apply_move, move_kind, Direction, MoveKind};
use crate::model::{ColoredWord, Symbol};
use crate::symbolic::RatePoint;
use crate::{Error, Result};

/// When to stop.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Horizon {
    Events(u64),
    Time(f64),
}

/// Everything that determines a run.
#[derive(Clone, Debug)]
pub struct SimConfig {
    pub l: usize,
    pub n: usize,
    pub rates: RatePoint,
    pub horizon: Horizon,
    pub seed: u64,
    /// Stream of the seeded generator; replicas use distinct streams.
    pub stream: u64,
    pub batches: usize,
    /// Start state; `tau0` when absent.
    pub start: Option<ColoredWord>,
    /// Accumulate time spent in every visited state.
    pub track_states: bool,
}

impl SimConfig {
    pub fn new(l: usize, n: usize, rates: RatePoint, horizon: Horizon, seed: u64) -> Self {
        SimConfig { l, n, rates, horizon, seed, stream: 0, batches: DEFAULT_BATCHES, start: None, track_states: false }
    }
}

pub const DEFAULT_BATCHES: usize = 20;

/// Per-batch accumulators.
#[derive(Clone, Debug, Serialize)]
pub struct Batch {
    pub time: f64,
    pub events: u64,
    pub ledger: CrossingLedger,
    /// Time-weighted occupation, `[species][row][column]` flattened with
    /// species 0 for bullets and 1 for boxes.
    pub occupancy: Vec<f64>,
}

impl Batch {
    fn new(l: usize, n: usize) -> Self {
        Batch { time: 0.0, events: 0, ledger: CrossingLedger::new(l, n), occupancy: vec![0.0; 2 * n * l] }
    }
}

/// The running chain.
#[derive(Clone, Debug)]
pub struct SimState {
    pub word: ColoredWord,
    pub elapsed: f64,
    pub events: u64,
    /// Whole-run occupation, same layout as [`Batch::occupancy`].
    pub occupancy: Vec<f64>,
    pub state_time: HashMap<ColoredWord, f64>,
    /// True when the chain has no outgoing moves.
    pub stalled: bool,
}

/// What one event did.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Event {
    pub kind: MoveKind,
    pub row: usize,
    pub holding: f64,
}

pub struct Simulator {
    cfg: SimConfig,
    p: Vec<f64>,
    q: Vec<f64>,
    letters: Vec<Symbol>,
    bullets: Vec<usize>,
    rng: ChaCha8Rng,
    state: SimState,
    ledger: CrossingLedger,
    batches: Vec<Batch>,
    candidates: Vec<(Direction, usize, f64)>,
}

impl Simulator {
    pub fn new(cfg: SimConfig) -> Result<Self> {
        crate::model::check_sizes(cfg.l, cfg.n)?;
        if cfg.rates.n() != cfg.n {
            return Err(Error::domain(format!("rates are for n = {}, expected {}", cfg.rates.n(), cfg.n)));
        }
        cfg.rates.check_usable()?;
        if cfg.batches == 0 {
            return Err(Error::domain("need at least one batch"));
        }
        match cfg.horizon {
            Horizon::Time(t) if !(t.is_finite() && t > 0.0) => {
                return Err(Error::domain("time horizon must be positive and finite"))
            }
            _ => {}
        }
        let word = match &cfg.start {
            Some(w) => {
                crate::model::validate(w).map_err(Error::Validation)?;
                if w.len() != cfg.l || w.n() != cfg.n {
                    return Err(Error::domain("start state has the wrong size"));
                }
                w.clone()
            }
            None => ColoredWord::tau0(cfg.l, cfg.n)?,
        };
        let (p, q) = cfg.rates.to_f64();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(cfg.stream);
        let (l, n) = (cfg.l, cfg.n);
        Ok(Simulator {
            p,
            q,
            letters: word.letters().to_vec(),
            bullets: word.bullet_positions(),
            rng,
            state: SimState {
                word,
                elapsed: 0.0,
                events: 0,
                occupancy: vec![0.0; 2 * n * l],
                state_time: HashMap::new(),
                stalled: false,
            },
            ledger: CrossingLedger::new(l, n),
            batches: (0..cfg.batches).map(|_| Batch::new(l, n)).collect(),
            candidates: Vec::with_capacity(2 * n),
            cfg,
        })
    }

    pub fn ledger(&self) -> &CrossingLedger {
        &self.ledger
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    fn batch_of_event(&self, e: u64) -> usize {
        match self.cfg.horizon {
            Horizon::Events(total) => ((e as u128 * self.cfg.batches as u128) / total.max(1) as u128) as usize,
            Horizon::Time(_) => 0,
        }
        .min(self.cfg.batches - 1)
    }

    fn batch_of_time(&self, t: f64) -> usize {
        match self.cfg.horizon {
            Horizon::Time(total) => ((t / total * self.cfg.batches as f64) as usize).min(self.cfg.batches - 1),
            Horizon::Events(_) => self.batch_of_event(self.state.events),
        }
    }

    /// Adds `dt` of holding time in the current configuration, split over
    /// batch boundaries for time horizons.
    fn hold(&mut self, dt: f64) {
        let (l, n) = (self.cfg.l, self.cfg.n);
        let mut t = self.state.elapsed;
        let end = t + dt;
        while t < end {
            let b = self.batch_of_time(t);
            let stop = match self.cfg.horizon {
                Horizon::Time(total) => (total * (b + 1) as f64 / self.cfg.batches as f64).min(end),
                Horizon::Events(_) => end,
            };
            let stop = if stop <= t { end } else { stop };
            let piece = stop - t;
            let batch = &mut self.batches[b];
            batch.time += piece;
            for (j, s) in self.letters.iter().enumerate() {
                let idx = match *s {
                    Symbol::Bullet(i) => i * l + j,
                    Symbol::Box(i) => n * l + i * l + j,
                };
                batch.occupancy[idx] += piece;
                self.state.occupancy[idx] += piece;
            }
            t = stop;
        }
        if self.cfg.track_states {
            let w = ColoredWord::from_letters_unchecked(n, self.letters.clone());
            *self.state.state_time.entry(w).or_insert(0.0) += dt;
        }
        self.state.elapsed = end;
    }

    fn done(&self) -> bool {
        self.state.stalled
            || match self.cfg.horizon {
                Horizon::Events(total) => self.state.events >= total,
                Horizon::Time(total) => self.state.elapsed >= total,
            }
    }

    /// Advances by one event, or to the time horizon if the next event would
    /// land beyond it. Returns `None` once the run is over.
    pub fn step(&mut self) -> Option<Event> {
        if self.done() {
            return None;
        }
        self.candidates.clear();
        let mut total = 0.0;
        for k in 0..self.cfg.n {
            for (dir, r) in [(Direction::Forward, self.p[k]), (Direction::Backward, self.q[k])] {
                if r > 0.0 && move_kind(&self.letters, &self.bullets, dir, k).is_some() {
                    total += r;
                    self.candidates.push((dir, k, r));
                }
            }
        }
        if self.candidates.is_empty() {
            self.state.stalled = true;
            return None;
        }
        let u: f64 = self.rng.sample(Exp1);
        let dt = u / total;
        if let Horizon::Time(limit) = self.cfg.horizon {
            if self.state.elapsed + dt >= limit {
                self.hold(limit - self.state.elapsed);
                self.state.elapsed = limit;
                return None;
            }
        }
        self.hold(dt);
        let mut pick = self.rng.random::<f64>() * total;
        let mut chosen = *self.candidates.last().expect("nonempty");
        for &c in &self.candidates {
            if pick < c.2 {
                chosen = c;
                break;
            }
            pick -= c.2;
        }
        let (dir, k, _) = chosen;
        let b = match self.cfg.horizon {
            Horizon::Events(_) => self.batch_of_event(self.state.events),
            Horizon::Time(_) => self.batch_of_time(self.state.elapsed),
        };
        let (ledger, batch) = (&mut self.ledger, &mut self.batches[b].ledger);
        let kind = apply_move(&mut self.letters, &mut self.bullets, dir, k, |d| {
            ledger.record(&d);
            batch.record(&d);
        })
        .expect("candidate move is available");
        self.ledger.record_event(kind, k);
        self.batches[b].ledger.record_event(kind, k);
        self.batches[b].events += 1;
        self.state.events += 1;
        Some(Event { kind, row: k, holding: dt })
    }

    pub fn run(mut self) -> SimOutcome {
        while self.step().is_some() {}
        self.finish()
    }

    pub fn finish(mut self) -> SimOutcome {
        self.state.word = ColoredWord::from_letters_unchecked(self.cfg.n, self.letters.clone());
        SimOutcome { config: self.cfg, state: self.state, ledger: self.ledger, batches: self.batches }
    }
}

/// A finished run.
#[derive(Clone, Debug)]
pub struct SimOutcome {
    pub config: SimConfig,
    pub state: SimState,
    pub ledger: CrossingLedger,
    pub batches: Vec<Batch>,
}

impl SimOutcome {
    /// Fraction of time in each visited state, sorted by state.
    pub fn empirical_distribution(&self) -> Vec<(ColoredWord, f64)> {
        let total = self.state.elapsed;
        let mut v: Vec<(ColoredWord, f64)> =
            self.state.state_time.iter().map(|(w, t)| (w.clone(), t / total)).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// Run manifest. Wall time is included only when given.
    pub fn manifest(&self, wall_time: Option<f64>) -> serde_json::Value {
        let c = &self.config;
        let mut doc = serde_json::json!({
            "L": c.l,
            "n": c.n,
            "rates": c.rates.to_json(),
            "seed": c.seed,
            "stream": c.stream,
            "horizon": c.horizon,
            "batches": c.batches,
            "events": self.state.events,
            "elapsed_time": self.state.elapsed,
            "stalled": self.state.stalled,
            "final_state": self.state.word.to_string(),
        });
        if let Some(w) = wall_time {
            doc["wall_time_s"] = serde_json::json!(w);
        }
        doc
    }
}

/// Convenience wrapper: build and run.
pub fn simulate(cfg: SimConfig) -> Result<SimOutcome> {
    Ok(Simulator::new(cfg)?.run())
}

/// Independent replicas on distinct streams of the same seed, run in
/// parallel when the feature is on. Replica `r` uses stream `r`.
pub fn simulate_replicas(cfg: &SimConfig, replicas: usize) -> Result<Vec<SimOutcome>> {
    use crate::par::*;
    let streams: Vec<u64> = (0..replicas as u64).collect();
    into_par_iter!(streams)
        .map(|s| {
            let mut c = cfg.clone();
            c.stream = s;
            simulate(c)
        })
        .collect()
}

/// Total variation distance between an empirical law and exact
/// probabilities given as `(state, probability)` pairs.
pub fn total_variation(empirical: &[(ColoredWord, f64)], exact: &[(ColoredWord, f64)]) -> f64 {
    let mut map: HashMap<&ColoredWord, (f64, f64)> = HashMap::new();
    for (w, p) in empirical {
        map.entry(w).or_default().0 += p;
    }
    for (w, p) in exact {
        map.entry(w).or_default().1 += p;
    }
    0.5 * map.values().map(|(a, b)| (a - b).abs()).sum::<f64>()
}
