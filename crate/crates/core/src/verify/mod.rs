//! Verification suites over parameter grids.
//!
//! Each suite restates one structural fact about shifting or about the
//! extremal product over a generated population of families and reports how
//! many cases hold, together with the first failure in grid order.
//! Conditional statements are checked conditionally: a case whose hypothesis
//! never fires still counts as a pass, and `hypothesis_hits` records how often
//! it did fire.
//!
//! Exhaustive populations depend only on the grid. Random populations are
//! drawn from a ChaCha stream per grid entry, so a report is reproducible
//! from its seed whatever the thread count.

pub mod generate;
pub mod grid;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::n0_threshold;
use crate::compression::{
    big_delta, compress_pair_to_fixpoint, compress_to_fixpoint, is_left_compressed, potential,
    CompressionIndex,
};
use crate::intersection::{
    common_star_center, cross_violation, is_cross_t_intersecting, is_t_intersecting, recognize_star,
};
use crate::search::{verify_theorem, SearchMode, SearchOptions, TheoremVerdict};
use crate::setcore::{BigCount, ElementSet, Family, Params};
use crate::{Error, Result};

use generate::{
    random_cross_pair, random_family, random_mixed_family, random_near_star_pair, subfamilies,
};
pub use grid::{parse_grid, preset, Grid, LayerCase, MechanicsCase, PairCase, Sampling};

pub const DEFAULT_SEED: u64 = 0x5EED;

/// Draws allowed per requested random pair before a generator is declared
/// unable to produce a feasible one.
const MAX_DRAWS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SuiteKind {
    /// Shifting both families of a cross-t-intersecting pair keeps them
    /// cross-t-intersecting.
    #[serde(rename = "lemma21i")]
    CrossPreservation,
    /// Members of a compressed cross-t-intersecting pair `(𝒜, ℬ)` of
    /// uniformities `r ≤ s` share `t` elements inside `[r+s−t]`.
    #[serde(rename = "lemma21ii")]
    Window,
    /// If a shift turns a cross-t-intersecting pair into a star pair on a
    /// common centre, the pair was already a star pair.
    #[serde(rename = "lemma31")]
    PairStability,
    /// If a shift turns a t-intersecting family into a largest t-star, the
    /// family was already one.
    #[serde(rename = "lemma32")]
    StarStability,
    /// Product bound, tightness and uniqueness of the star optimizers.
    #[serde(rename = "theorem")]
    Theorem,
    /// Size preservation, idempotence, potential descent and fixpoints of
    /// the shifting operators.
    #[serde(rename = "compression")]
    Compression,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 6] = [
        SuiteKind::CrossPreservation,
        SuiteKind::Window,
        SuiteKind::PairStability,
        SuiteKind::StarStability,
        SuiteKind::Theorem,
        SuiteKind::Compression,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SuiteKind::CrossPreservation => "lemma21i",
            SuiteKind::Window => "lemma21ii",
            SuiteKind::PairStability => "lemma31",
            SuiteKind::StarStability => "lemma32",
            SuiteKind::Theorem => "theorem",
            SuiteKind::Compression => "compression",
        }
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = SuiteKind::ALL.iter().map(SuiteKind::name).collect();
                Error::Params(format!(
                    "unknown suite {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Search mode for theorem instances with two families.
    pub mode: SearchMode,
    /// Search guards for theorem instances; `threads` also caps the
    /// workers of every suite.
    pub search: SearchOptions,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: DEFAULT_SEED,
            mode: SearchMode::Closure,
            search: SearchOptions::default(),
        }
    }
}

/// A single failing case, complete enough to be re-run with [`replay`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub suite: SuiteKind,
    pub n: usize,
    pub t: usize,
    pub uniformities: Vec<usize>,
    /// The input families, as element lists.
    pub families: Vec<Vec<Vec<usize>>>,
    pub index: Option<CompressionIndex>,
    pub mode: Option<SearchMode>,
    /// Grid entry the case came from.
    pub entry: usize,
    /// Position of the case within that entry's population.
    pub case: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: SuiteKind,
    pub grid: Vec<String>,
    /// `None` when no grid entry is randomized.
    pub seed: Option<u64>,
    pub cases_run: u64,
    pub cases_passed: u64,
    /// Checks in which the statement's hypothesis held (for unconditional
    /// statements, every check).
    pub hypothesis_hits: u64,
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<TheoremVerdict>,
    pub wall_time_ms: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases_passed == self.cases_run
    }
}

/// Result of checking one case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass {
        hits: u64,
    },
    Fail {
        index: Option<CompressionIndex>,
        detail: String,
    },
}

impl Outcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass { .. })
    }
}

fn fail(index: Option<CompressionIndex>, detail: String) -> Result<Outcome> {
    Ok(Outcome::Fail { index, detail })
}

/// `Δ_{i,j}` applied to both families keeps them cross-`t`-intersecting, for
/// every `i ≠ j`. Pairs that are not cross-`t`-intersecting pass vacuously.
pub fn check_cross_preservation(a: &Family, b: &Family, t: usize) -> Result<Outcome> {
    if !is_cross_t_intersecting(a, b, t)? {
        return Ok(Outcome::Pass { hits: 0 });
    }
    let mut hits = 0;
    for idx in CompressionIndex::all(a.universe_size()) {
        let (da, db) = (big_delta(a, idx)?, big_delta(b, idx)?);
        if let Some((x, y)) = cross_violation(&da, &db, t)? {
            return fail(
                Some(idx),
                format!("images {x} and {y} share fewer than {t} elements"),
            );
        }
        hits += 1;
    }
    Ok(Outcome::Pass { hits })
}

/// After compressing a cross-`t`-intersecting pair to its fixpoint, every
/// member pair shares at least `t` elements of `[r+s−t]`.
pub fn check_window(a: &Family, b: &Family, r: usize, s: usize, t: usize) -> Result<Outcome> {
    if !is_cross_t_intersecting(a, b, t)? {
        return Ok(Outcome::Pass { hits: 0 });
    }
    let n = a.universe_size();
    let (ca, cb, _) = compress_pair_to_fixpoint(a, b)?;
    if !is_left_compressed(&ca) || !is_left_compressed(&cb) {
        return fail(None, "fixpoint is not compressed".into());
    }
    if let Some((x, y)) = cross_violation(&ca, &cb, t)? {
        return fail(
            None,
            format!("fixpoint members {x} and {y} share fewer than {t} elements"),
        );
    }
    let width = (r + s).saturating_sub(t).min(n);
    let window = ElementSet::prefix(n, width)?;
    for x in &ca {
        for y in &cb {
            if x.intersection(y).intersection(&window).cardinality() < t {
                return fail(
                    None,
                    format!(
                        "fixpoint members {x} and {y} share fewer than {t} elements of [{width}]"
                    ),
                );
            }
        }
    }
    Ok(Outcome::Pass { hits: 1 })
}

/// Whenever `Δ_{i,j}(𝒜)` and `Δ_{i,j}(ℬ)` are full `t`-stars on a common
/// centre, so are `𝒜` and `ℬ`. Pairs that are not cross-`t`-intersecting
/// pass vacuously.
pub fn check_pair_stability(a: &Family, b: &Family, t: usize) -> Result<Outcome> {
    if !is_cross_t_intersecting(a, b, t)? {
        return Ok(Outcome::Pass { hits: 0 });
    }
    let before = common_star_center(&[a.clone(), b.clone()], t);
    let mut hits = 0;
    for idx in CompressionIndex::all(a.universe_size()) {
        let images = [big_delta(a, idx)?, big_delta(b, idx)?];
        if let Some(center) = common_star_center(&images, t) {
            hits += 1;
            if before.is_none() {
                return fail(
                    Some(idx),
                    format!(
                        "images form the star pair on {center} but the pair is not a star pair"
                    ),
                );
            }
        }
    }
    Ok(Outcome::Pass { hits })
}

/// Whenever `Δ_{i,j}(𝒢)` is a largest `t`-star of its layer, so is `𝒢`.
/// Families that are not `t`-intersecting pass vacuously.
pub fn check_star_stability(g: &Family, t: usize) -> Result<Outcome> {
    if !is_t_intersecting(g, t) {
        return Ok(Outcome::Pass { hits: 0 });
    }
    let before = recognize_star(g, t)?;
    let mut hits = 0;
    for idx in CompressionIndex::all(g.universe_size()) {
        if let Some(center) = recognize_star(&big_delta(g, idx)?, t)? {
            hits += 1;
            if before.is_none() {
                return fail(
                    Some(idx),
                    format!("image is the t-star on {center} but the family is not a t-star"),
                );
            }
        }
    }
    Ok(Outcome::Pass { hits })
}

/// Every shift preserves size and is idempotent, every changing
/// left-compression lowers the potential, and the fixpoint driver ends at a
/// compressed family of the same size along a strictly decreasing trace.
pub fn check_compression_mechanics(f: &Family) -> Result<Outcome> {
    let before = potential(f);
    for idx in CompressionIndex::all(f.universe_size()) {
        let image = big_delta(f, idx)?;
        if image.len() != f.len() {
            return fail(
                Some(idx),
                format!("size changed from {} to {}", f.len(), image.len()),
            );
        }
        if big_delta(&image, idx)? != image {
            return fail(Some(idx), "shift is not idempotent".into());
        }
        if idx.is_left() && image != *f && potential(&image) >= before {
            return fail(
                Some(idx),
                "changing left-compression did not lower the potential".into(),
            );
        }
    }
    let (fixed, trace) = compress_to_fixpoint(f);
    if fixed.len() != f.len() {
        return fail(None, "fixpoint changed the family size".into());
    }
    if !is_left_compressed(&fixed) {
        return fail(None, "fixpoint is not compressed".into());
    }
    if !trace.is_strictly_decreasing() {
        return fail(None, "potential trace is not strictly decreasing".into());
    }
    Ok(Outcome::Pass { hits: 1 })
}

/// Runs the extremal search on `params`. Instances below the threshold are
/// informational and pass; above it the optimum must equal the bound and the
/// optimal tuples must be exactly the star tuples (where the mode enumerates
/// them).
pub fn check_theorem(
    params: &Params,
    mode: SearchMode,
    options: &SearchOptions,
) -> Result<(Outcome, TheoremVerdict)> {
    let (verdict, _) = verify_theorem(params, mode, options)?;
    if !verdict.threshold_applicable {
        return Ok((Outcome::Pass { hits: 0 }, verdict));
    }
    let outcome = if !verdict.bound_holds {
        Outcome::Fail {
            index: None,
            detail: format!(
                "optimum {} exceeds bound {}",
                verdict.optimum, verdict.bound
            ),
        }
    } else if !verdict.bound_tight {
        Outcome::Fail {
            index: None,
            detail: format!(
                "optimum {} is below bound {}",
                verdict.optimum, verdict.bound
            ),
        }
    } else if verdict.uniqueness == Some(false) {
        Outcome::Fail {
            index: None,
            detail: "an optimal tuple is not a star tuple".into(),
        }
    } else if verdict.exact_star_witness_set == Some(false) {
        Outcome::Fail {
            index: None,
            detail: "optimal tuples differ from the set of star tuples".into(),
        }
    } else {
        Outcome::Pass { hits: 1 }
    };
    Ok((outcome, verdict))
}

/// Running totals for one suite, merged in grid order.
#[derive(Default)]
struct Tally {
    run: u64,
    passed: u64,
    hits: u64,
    first: Option<Counterexample>,
}

impl Tally {
    fn record(
        &mut self,
        outcome: Outcome,
        make: impl FnOnce(Option<CompressionIndex>, String) -> Counterexample,
    ) {
        self.run += 1;
        match outcome {
            Outcome::Pass { hits } => {
                self.passed += 1;
                self.hits += hits;
            }
            Outcome::Fail { index, detail } => {
                if self.first.is_none() {
                    self.first = Some(make(index, detail));
                }
            }
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.run += other.run;
        self.passed += other.passed;
        self.hits += other.hits;
        if self.first.is_none() {
            self.first = other.first;
        }
    }
}

fn entry_rng(seed: u64, entry: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(entry as u64);
    rng
}

fn lists(families: &[&Family]) -> Vec<Vec<Vec<usize>>> {
    families.iter().map(|f| f.to_lists()).collect()
}

type PairCheck = dyn Fn(&Family, &Family, &PairCase) -> Result<Outcome> + Sync;
type PairDraw = dyn Fn(&mut ChaCha8Rng, &PairCase, u64) -> Result<(Family, Family)>;

/// Runs `check` over the cross-`t`-intersecting pairs of every entry:
/// exhaustively, or by drawing with `draw` for random entries.
fn run_pairs(
    kind: SuiteKind,
    cases: &[PairCase],
    seed: u64,
    check: &PairCheck,
    draw: &PairDraw,
) -> Result<Tally> {
    let mut total = Tally::default();
    for (entry, case) in cases.iter().enumerate() {
        Params::pair(case.n, case.r, case.s, case.t)?;
        let make = |a: &Family, b: &Family, pos: u64, index, detail| Counterexample {
            suite: kind,
            n: case.n,
            t: case.t,
            uniformities: vec![case.r, case.s],
            families: lists(&[a, b]),
            index,
            mode: None,
            entry,
            case: pos,
            detail,
        };
        let tally = match case.sampling {
            Sampling::Exhaustive { max_family_size } => {
                let fa = subfamilies(case.n, case.r, max_family_size)?;
                let fb = if case.s == case.r {
                    fa.clone()
                } else {
                    subfamilies(case.n, case.s, max_family_size)?
                };
                let width = fb.len() as u64;
                let parts = fa
                    .par_iter()
                    .enumerate()
                    .map(|(ai, a)| {
                        let mut part = Tally::default();
                        for (bi, b) in fb.iter().enumerate() {
                            if !is_cross_t_intersecting(a, b, case.t)? {
                                continue;
                            }
                            let pos = ai as u64 * width + bi as u64;
                            part.record(check(a, b, case)?, |i, d| make(a, b, pos, i, d));
                        }
                        Ok(part)
                    })
                    .collect::<Result<Vec<Tally>>>()?;
                parts.into_iter().fold(Tally::default(), |mut acc, p| {
                    acc.absorb(p);
                    acc
                })
            }
            Sampling::Random { cases: count } => {
                let mut rng = entry_rng(seed, entry);
                let mut population = Vec::with_capacity(count);
                for pos in 0..count as u64 {
                    let mut draws = 0;
                    let pair = loop {
                        let (a, b) = draw(&mut rng, case, pos)?;
                        if is_cross_t_intersecting(&a, &b, case.t)? {
                            break (a, b);
                        }
                        draws += 1;
                        if draws == MAX_DRAWS {
                            return Err(Error::Grid(format!(
                                "no cross-{}-intersecting pair after {MAX_DRAWS} draws",
                                case.t
                            )));
                        }
                    };
                    population.push(pair);
                }
                let outcomes = population
                    .par_iter()
                    .map(|(a, b)| check(a, b, case))
                    .collect::<Result<Vec<_>>>()?;
                let mut tally = Tally::default();
                for (pos, ((a, b), outcome)) in population.iter().zip(outcomes).enumerate() {
                    tally.record(outcome, |i, d| make(a, b, pos as u64, i, d));
                }
                tally
            }
        };
        total.absorb(tally);
    }
    Ok(total)
}

fn any_random(cases: &[PairCase]) -> bool {
    cases
        .iter()
        .any(|c| matches!(c.sampling, Sampling::Random { .. }))
}

fn finish(
    kind: SuiteKind,
    grid: &Grid,
    seed: Option<u64>,
    tally: Tally,
    verdicts: Vec<TheoremVerdict>,
    started: Instant,
) -> SuiteReport {
    SuiteReport {
        suite: kind,
        grid: grid.describe(),
        seed,
        cases_run: tally.run,
        cases_passed: tally.passed,
        hypothesis_hits: tally.hits,
        counterexample: tally.first,
        verdicts,
        wall_time_ms: started.elapsed().as_millis() as u64,
    }
}

fn draw_cross(rng: &mut ChaCha8Rng, c: &PairCase, _: u64) -> Result<(Family, Family)> {
    random_cross_pair(rng, c.n, c.r, c.s, c.t)
}

/// Shifts of both families preserve cross-`t`-intersection.
pub fn suite_cross_preservation(cases: &[PairCase], options: &SuiteOptions) -> Result<SuiteReport> {
    let started = Instant::now();
    let tally = options.search.run(|| {
        run_pairs(
            SuiteKind::CrossPreservation,
            cases,
            options.seed,
            &|a, b, c| check_cross_preservation(a, b, c.t),
            &draw_cross,
        )
    })??;
    let seed = any_random(cases).then_some(options.seed);
    let grid = Grid::Pairs(cases.to_vec());
    Ok(finish(
        SuiteKind::CrossPreservation,
        &grid,
        seed,
        tally,
        Vec::new(),
        started,
    ))
}

/// Compressed cross-`t`-intersecting pairs meet inside `[r+s−t]`.
pub fn suite_window(cases: &[PairCase], options: &SuiteOptions) -> Result<SuiteReport> {
    let started = Instant::now();
    let tally = options.search.run(|| {
        run_pairs(
            SuiteKind::Window,
            cases,
            options.seed,
            &|a, b, c| check_window(a, b, c.r, c.s, c.t),
            &draw_cross,
        )
    })??;
    let seed = any_random(cases).then_some(options.seed);
    let grid = Grid::Pairs(cases.to_vec());
    Ok(finish(
        SuiteKind::Window,
        &grid,
        seed,
        tally,
        Vec::new(),
        started,
    ))
}

/// Shifts that produce a common star pair come from one. Every entry must
/// satisfy `n ≥ n₀(r, s, t)`.
pub fn suite_pair_stability(cases: &[PairCase], options: &SuiteOptions) -> Result<SuiteReport> {
    let started = Instant::now();
    for c in cases {
        let n0 = n0_threshold(c.r, c.s, c.t)?;
        if BigCount::from(c.n) < n0 {
            return Err(Error::Grid(format!(
                "n={} is below the threshold {n0} for r={} s={} t={}",
                c.n, c.r, c.s, c.t
            )));
        }
    }
    // Alternate near-star pairs, whose shifts often land on a star pair, with
    // generic feasible pairs.
    let draw = |rng: &mut ChaCha8Rng, c: &PairCase, pos: u64| {
        if pos.is_multiple_of(2) {
            random_near_star_pair(rng, c.n, c.r, c.s, c.t)
        } else {
            random_cross_pair(rng, c.n, c.r, c.s, c.t)
        }
    };
    let tally = options.search.run(|| {
        run_pairs(
            SuiteKind::PairStability,
            cases,
            options.seed,
            &|a, b, c| check_pair_stability(a, b, c.t),
            &draw,
        )
    })??;
    let seed = any_random(cases).then_some(options.seed);
    let grid = Grid::Pairs(cases.to_vec());
    Ok(finish(
        SuiteKind::PairStability,
        &grid,
        seed,
        tally,
        Vec::new(),
        started,
    ))
}

/// Shifts that produce a largest `t`-star come from one. Every entry must
/// satisfy `n ≥ 2p − t + 1`; populations are exhaustive.
pub fn suite_star_stability(cases: &[LayerCase], options: &SuiteOptions) -> Result<SuiteReport> {
    let started = Instant::now();
    for c in cases {
        Params::pair(c.n, c.p, c.p, c.t)?;
        if c.n + c.t < 2 * c.p + 1 {
            return Err(Error::Grid(format!(
                "n={} is below 2p−t+1 = {} for p={} t={}",
                c.n,
                2 * c.p + 1 - c.t,
                c.p,
                c.t
            )));
        }
    }
    let tally = options.search.run(|| -> Result<Tally> {
        let mut total = Tally::default();
        for (entry, c) in cases.iter().enumerate() {
            let population = subfamilies(c.n, c.p, None)?;
            let outcomes = population
                .par_iter()
                .map(|g| {
                    if is_t_intersecting(g, c.t) {
                        check_star_stability(g, c.t).map(Some)
                    } else {
                        Ok(None)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            for (pos, (g, outcome)) in population.iter().zip(outcomes).enumerate() {
                let Some(outcome) = outcome else { continue };
                total.record(outcome, |index, detail| Counterexample {
                    suite: SuiteKind::StarStability,
                    n: c.n,
                    t: c.t,
                    uniformities: vec![c.p],
                    families: lists(&[g]),
                    index,
                    mode: None,
                    entry,
                    case: pos as u64,
                    detail,
                });
            }
        }
        Ok(total)
    })??;
    let grid = Grid::Layers(cases.to_vec());
    Ok(finish(
        SuiteKind::StarStability,
        &grid,
        None,
        tally,
        Vec::new(),
        started,
    ))
}

/// Extremal search on every instance; see [`check_theorem`].
pub fn suite_theorem(instances: &[Params], options: &SuiteOptions) -> Result<SuiteReport> {
    let started = Instant::now();
    let inner = SearchOptions {
        threads: None,
        ..options.search.clone()
    };
    let (tally, verdicts) = options
        .search
        .run(|| -> Result<(Tally, Vec<TheoremVerdict>)> {
            let mut tally = Tally::default();
            let mut verdicts = Vec::with_capacity(instances.len());
            for (entry, params) in instances.iter().enumerate() {
                let (outcome, verdict) = check_theorem(params, options.mode, &inner)?;
                tally.record(outcome, |index, detail| Counterexample {
                    suite: SuiteKind::Theorem,
                    n: params.n(),
                    t: params.t(),
                    uniformities: params.uniformities().to_vec(),
                    families: Vec::new(),
                    index,
                    mode: Some(verdict.mode),
                    entry,
                    case: 0,
                    detail,
                });
                verdicts.push(verdict);
            }
            Ok((tally, verdicts))
        })??;
    let grid = Grid::Instances(instances.to_vec());
    Ok(finish(
        SuiteKind::Theorem,
        &grid,
        None,
        tally,
        verdicts,
        started,
    ))
}

/// Shifting mechanics on random families, half uniform and half of mixed
/// set sizes.
pub fn suite_compression(cases: &[MechanicsCase], options: &SuiteOptions) -> Result<SuiteReport> {
    use rand::Rng;

    let started = Instant::now();
    let tally = options.search.run(|| -> Result<Tally> {
        let mut total = Tally::default();
        for (entry, c) in cases.iter().enumerate() {
            let mut rng = entry_rng(options.seed, entry);
            let mut population = Vec::with_capacity(c.cases);
            for pos in 0..c.cases {
                let family = if pos % 2 == 0 {
                    let r = rng.gen_range(0..=c.n);
                    let density = rng.gen_range(0.0..=1.0);
                    random_family(&mut rng, c.n, r, density)?
                } else {
                    random_mixed_family(&mut rng, c.n, 24)?
                };
                population.push(family);
            }
            let outcomes = population
                .par_iter()
                .map(check_compression_mechanics)
                .collect::<Result<Vec<_>>>()?;
            for (pos, (f, outcome)) in population.iter().zip(outcomes).enumerate() {
                total.record(outcome, |index, detail| Counterexample {
                    suite: SuiteKind::Compression,
                    n: c.n,
                    t: 0,
                    uniformities: f.uniformity().into_iter().collect(),
                    families: lists(&[f]),
                    index,
                    mode: None,
                    entry,
                    case: pos as u64,
                    detail,
                });
            }
        }
        Ok(total)
    })??;
    let grid = Grid::Mechanics(cases.to_vec());
    let seed = (!cases.is_empty()).then_some(options.seed);
    Ok(finish(
        SuiteKind::Compression,
        &grid,
        seed,
        tally,
        Vec::new(),
        started,
    ))
}

/// Runs `kind` over `grid`, which must have the shape that suite expects.
pub fn run_suite(kind: SuiteKind, grid: &Grid, options: &SuiteOptions) -> Result<SuiteReport> {
    let mismatch = || Error::Grid(format!("grid shape does not fit suite {kind}"));
    match (kind, grid) {
        (SuiteKind::CrossPreservation, Grid::Pairs(c)) => suite_cross_preservation(c, options),
        (SuiteKind::Window, Grid::Pairs(c)) => suite_window(c, options),
        (SuiteKind::PairStability, Grid::Pairs(c)) => suite_pair_stability(c, options),
        (SuiteKind::StarStability, Grid::Layers(c)) => suite_star_stability(c, options),
        (SuiteKind::Theorem, Grid::Instances(c)) => suite_theorem(c, options),
        (SuiteKind::Compression, Grid::Mechanics(c)) => suite_compression(c, options),
        _ => Err(mismatch()),
    }
}

/// Re-runs the single case recorded in `cx`.
pub fn replay(cx: &Counterexample, options: &SuiteOptions) -> Result<Outcome> {
    let families = cx
        .families
        .iter()
        .map(|f| Family::from_lists(cx.n, f))
        .collect::<Result<Vec<_>>>()?;
    let expect = |k: usize| {
        if families.len() == k {
            Ok(())
        } else {
            Err(Error::Params(format!(
                "{} expects {k} families, got {}",
                cx.suite,
                families.len()
            )))
        }
    };
    match cx.suite {
        SuiteKind::CrossPreservation => {
            expect(2)?;
            check_cross_preservation(&families[0], &families[1], cx.t)
        }
        SuiteKind::Window => {
            expect(2)?;
            let [r, s] = cx.uniformities[..] else {
                return Err(Error::Params("window replay needs two uniformities".into()));
            };
            check_window(&families[0], &families[1], r, s, cx.t)
        }
        SuiteKind::PairStability => {
            expect(2)?;
            check_pair_stability(&families[0], &families[1], cx.t)
        }
        SuiteKind::StarStability => {
            expect(1)?;
            check_star_stability(&families[0], cx.t)
        }
        SuiteKind::Compression => {
            expect(1)?;
            check_compression_mechanics(&families[0])
        }
        SuiteKind::Theorem => {
            let params = Params::k_ary(cx.n, cx.uniformities.clone(), cx.t)?;
            let mode = cx.mode.unwrap_or(options.mode);
            check_theorem(&params, mode, &options.search).map(|(outcome, _)| outcome)
        }
    }
}
