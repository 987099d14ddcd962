//! Exact maximisation of `|𝒜||ℬ|` over cross-t-intersecting pairs
//! `𝒜 ⊆ C([n], r)`, `ℬ ⊆ C([n], s)`, and of `∏|𝒜ᵢ|` for k families.
//!
//! Three pair modes share one report type:
//!
//! * [`SearchMode::Brute`] enumerates every nonempty `𝒜` and pairs it with its
//!   compatible family. It is the independent oracle for the other two.
//! * [`SearchMode::Closure`] enumerates closed families only (`𝒜` equal to the
//!   set of `r`-sets compatible with its own compatible family) with
//!   include/exclude branching, a canonicity test and the upper bound
//!   `(|𝒜| + remaining) · |ℬ|`.
//! * [`SearchMode::Compressed`] enumerates left-compressed `𝒜` only. It finds
//!   the optimum value but not every optimal pair.
//!
//! An optimal pair with positive product always has `ℬ` equal to the
//! compatible family of `𝒜`, and `𝒜` closed, so brute and closure modes both
//! report every optimal pair.

mod bits;
mod brute;
mod closure;
mod compressed;
mod kary;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::{product_bound, threshold_applicable};
use crate::intersection::common_star_center;
use crate::setcore::{binomial, BigCount, ElementSet, Family, Params};
use crate::{Error, Result};

pub use kary::max_product_k;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Brute,
    Closure,
    Compressed,
}

impl SearchMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SearchMode::Brute => "brute",
            SearchMode::Closure => "closure",
            SearchMode::Compressed => "compressed",
        }
    }

    /// Whether the mode reports every optimal tuple.
    pub fn enumerates_all_witnesses(&self) -> bool {
        !matches!(self, SearchMode::Compressed)
    }

    /// Default guard on the size of the first layer `C(n, r)`.
    pub fn default_guard(&self) -> u128 {
        match self {
            SearchMode::Brute => 20,
            SearchMode::Closure => 40,
            SearchMode::Compressed => 64,
        }
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(SearchMode::Brute),
            "closure" => Ok(SearchMode::Closure),
            "compressed" => Ok(SearchMode::Compressed),
            other => Err(Error::Params(format!("unknown search mode `{other}`"))),
        }
    }
}

/// Largest second layer any pair mode will materialise.
pub const MAX_SECOND_LAYER: u128 = 1 << 20;

/// Default cap on `∏_{i<k} 2^{|C(n, rᵢ)|}` for the k-family search.
pub const DEFAULT_K_GUARD: u128 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Overrides the mode's default guard (first-layer size for pair modes,
    /// enumerated tuple count for k families).
    pub guard: Option<u128>,
    /// Worker threads; `None` uses the ambient rayon pool.
    pub threads: Option<usize>,
    /// Witnesses kept in the report; the total is always counted.
    pub witness_limit: usize,
    /// Also evaluate tuples containing empty families (product 0). Never
    /// changes the optimum, which is at least the star product.
    pub include_empty: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            guard: None,
            threads: None,
            witness_limit: 10_000,
            include_empty: false,
        }
    }
}

impl SearchOptions {
    pub(crate) fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> Result<T> {
        match self.threads {
            None => Ok(job()),
            Some(k) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(k.max(1))
                    .build()
                    .map_err(|e| Error::Params(format!("thread pool: {e}")))?;
                Ok(pool.install(job))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub params: Params,
    pub mode: SearchMode,
    pub optimum: BigCount,
    /// Optimal tuples in canonical order, truncated to the witness limit.
    pub witnesses: Vec<Vec<Family>>,
    pub witness_count: u64,
    pub witnesses_truncated: bool,
    /// False in compressed mode, which reports only compressed optima.
    pub witnesses_complete: bool,
    /// Every optimal tuple found is a star tuple on a common centre.
    pub all_witnesses_are_star_tuples: bool,
    /// Common centre of each retained witness, if it is a star tuple.
    pub common_t_per_witness: Vec<Option<ElementSet>>,
    pub nodes_explored: u64,
}

/// Raw search outcome before conversion to families.
pub(crate) struct RawOutcome {
    pub optimum: u128,
    pub tuples: Vec<Vec<Family>>,
    pub nodes: u64,
}

pub(crate) fn build_report(
    params: &Params,
    mode: SearchMode,
    raw: RawOutcome,
    limit: usize,
    complete: bool,
) -> SearchReport {
    let RawOutcome {
        optimum,
        mut tuples,
        nodes,
    } = raw;
    tuples.sort();
    let centres: Vec<Option<ElementSet>> = tuples
        .iter()
        .map(|tuple| common_star_center(tuple, params.t()))
        .collect();
    let all_star = centres.iter().all(Option::is_some);
    let count = tuples.len() as u64;
    let truncated = tuples.len() > limit;
    tuples.truncate(limit);
    let mut centres = centres;
    centres.truncate(limit);
    SearchReport {
        params: params.clone(),
        mode,
        optimum: BigCount::from(optimum),
        witnesses: tuples,
        witness_count: count,
        witnesses_truncated: truncated,
        witnesses_complete: complete,
        all_witnesses_are_star_tuples: all_star,
        common_t_per_witness: centres,
        nodes_explored: nodes,
    }
}

fn check_pair_guards(params: &Params, guard: u128) -> Result<()> {
    if !params.is_pair() {
        return Err(Error::Params(format!(
            "pair search needs two uniformities, got {}",
            params.k()
        )));
    }
    let a = layer_size(params.n(), params.r());
    if a > guard {
        return Err(Error::Guard {
            what: format!("C({}, {})", params.n(), params.r()),
            size: a,
            limit: guard,
        });
    }
    if a > 64 {
        return Err(Error::Guard {
            what: format!("C({}, {})", params.n(), params.r()),
            size: a,
            limit: 64,
        });
    }
    let b = layer_size(params.n(), params.s());
    if b > MAX_SECOND_LAYER {
        return Err(Error::Guard {
            what: format!("C({}, {})", params.n(), params.s()),
            size: b,
            limit: MAX_SECOND_LAYER,
        });
    }
    Ok(())
}

pub(crate) fn layer_size(n: usize, r: usize) -> u128 {
    binomial(n as u64, r as u64).to_u128().unwrap_or(u128::MAX)
}

/// Exhaustive oracle: every nonempty `𝒜 ⊆ C([n], r)`, each paired with its
/// compatible family. Depends on nothing but the definitions.
pub fn max_product_brute(params: &Params, options: &SearchOptions) -> Result<SearchReport> {
    let guard = options.guard.unwrap_or(SearchMode::Brute.default_guard());
    check_pair_guards(params, guard.min(30))?;
    let raw = options.run(|| brute::run(params, options.include_empty))??;
    Ok(build_report(
        params,
        SearchMode::Brute,
        raw,
        options.witness_limit,
        true,
    ))
}

/// Branch-and-bound in closure or compressed mode.
pub fn max_product_bnb(
    params: &Params,
    mode: SearchMode,
    options: &SearchOptions,
) -> Result<SearchReport> {
    let guard = options.guard.unwrap_or(mode.default_guard());
    check_pair_guards(params, guard)?;
    let seed = product_bound(params)
        .to_u128()
        .expect("guarded layers keep products small");
    let raw = match mode {
        SearchMode::Closure => options.run(|| closure::run(params, seed))??,
        SearchMode::Compressed => options.run(|| compressed::run(params, seed))??,
        SearchMode::Brute => return max_product_brute(params, options),
    };
    Ok(build_report(
        params,
        mode,
        raw,
        options.witness_limit,
        mode.enumerates_all_witnesses(),
    ))
}

/// Dispatches a pair search by mode.
pub fn max_product(
    params: &Params,
    mode: SearchMode,
    options: &SearchOptions,
) -> Result<SearchReport> {
    match mode {
        SearchMode::Brute => max_product_brute(params, options),
        _ => max_product_bnb(params, mode, options),
    }
}

/// Outcome of checking the extremal product theorem on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub params: Params,
    pub mode: SearchMode,
    pub optimum: BigCount,
    pub bound: BigCount,
    pub bound_holds: bool,
    pub bound_tight: bool,
    /// Every optimal tuple is a star tuple on a common centre. `None` when
    /// the mode does not enumerate all optima.
    pub uniqueness: Option<bool>,
    /// The optimal tuples are exactly the distinct star tuples over all
    /// `T ∈ C([n], t)`. `None` when the mode does not enumerate all optima.
    pub exact_star_witness_set: Option<bool>,
    pub threshold_applicable: bool,
    pub witness_count: u64,
    pub nodes_explored: u64,
}

impl TheoremVerdict {
    /// Bound, tightness and (where checked) uniqueness all hold.
    pub fn confirms_theorem(&self) -> bool {
        self.bound_holds && self.bound_tight && self.uniqueness.unwrap_or(true)
    }
}

/// Runs the search for `params` and compares with the product bound. Pair
/// instances use `mode`; instances with three or more families always use
/// the exhaustive k-family search.
pub fn verify_theorem(
    params: &Params,
    mode: SearchMode,
    options: &SearchOptions,
) -> Result<(TheoremVerdict, SearchReport)> {
    let report = if params.is_pair() {
        max_product(params, mode, options)?
    } else {
        max_product_k(params, options)?
    };
    let bound = product_bound(params);
    let complete = report.witnesses_complete;
    let uniqueness = complete.then_some(report.all_witnesses_are_star_tuples);
    let exact = if complete && !report.witnesses_truncated {
        let stars = crate::intersection::all_star_tuples(params)?;
        Some(stars == report.witnesses)
    } else {
        None
    };
    let verdict = TheoremVerdict {
        params: params.clone(),
        mode: report.mode,
        bound_holds: report.optimum <= bound,
        bound_tight: report.optimum == bound,
        optimum: report.optimum.clone(),
        bound,
        uniqueness,
        exact_star_witness_set: exact,
        threshold_applicable: threshold_applicable(params),
        witness_count: report.witness_count,
        nodes_explored: report.nodes_explored,
    };
    Ok((verdict, report))
}

/// Witness bookkeeping shared by the enumerators: best value plus every
/// item reaching it.
pub(crate) struct Best<T> {
    pub value: u128,
    pub hits: Vec<T>,
}

impl<T> Best<T> {
    pub fn new(seed: u128) -> Self {
        Best {
            value: seed,
            hits: Vec::new(),
        }
    }

    #[inline]
    pub fn offer(&mut self, value: u128, item: impl FnOnce() -> T) {
        if value > self.value {
            self.value = value;
            self.hits.clear();
            self.hits.push(item());
        } else if value == self.value {
            self.hits.push(item());
        }
    }

    /// Merge partial results; only hits at the overall best survive.
    pub fn merge(parts: Vec<Best<T>>, seed: u128) -> Best<T> {
        let value = parts
            .iter()
            .map(|p| p.value)
            .max()
            .unwrap_or(seed)
            .max(seed);
        let hits = parts
            .into_iter()
            .filter(|p| p.value == value)
            .flat_map(|p| p.hits)
            .collect();
        Best { value, hits }
    }
}
