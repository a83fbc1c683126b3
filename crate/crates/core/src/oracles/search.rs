//! Bounded enumeration of nonsplit self-extension data over small prime
//! fields.
//!
//! Module matrices are sampled from strictly upper-triangular shapes
//! (nilpotence forced), maps from the exact Hom bases of each candidate
//! pair: `f~` ranges over the nilpotent elements of `End(Z)`, `g~` and
//! `h~` over all of `Hom(Z, Y)` and `Hom(Y, Z)`.  Exactness then reduces
//! to `f~^2 = h~ g~` plus two rank conditions.  Every surviving datum is
//! re-screened for nonsplitness, and indecomposability of `Z` is decided
//! by exhaustive idempotent search when `[Z,Z] <= 3`; otherwise the datum
//! is skipped, never guessed.

use std::sync::Arc;
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algmod::{hom_basis, AlgebraPresentation, HomSpace, ModulePoint};
use crate::degen::{check_exact, check_split, SelfExtensionDatum};
use crate::exactfield::{FieldSpec, Matrix, Scalar};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct SearchParams {
    /// Must be a prime field; `p <= 3` recommended.
    pub field: FieldSpec,
    /// Dimension of `Z` (and `Y`); at most 4.
    pub d_z: usize,
    /// Generator count of the free algebra; at most 2.
    pub t: usize,
    /// Maximum number of `(f~, g~, h~)` triples examined, split evenly
    /// over the module pairs.
    pub budget: u64,
    /// Seed for the sampled regime (`d_z >= 3`, where full enumeration of
    /// the map space is no longer feasible).
    pub seed: u64,
    /// Worker threads; the outcome does not depend on this.
    pub jobs: usize,
}

#[derive(Debug)]
pub struct SearchOutcome {
    pub found: Vec<SelfExtensionDatum>,
    /// Triples examined across all module pairs.
    pub examined: u64,
    /// True when the budget truncated the search (always true in the
    /// sampled regime).
    pub budget_exhausted: bool,
    /// Data rejected only because indecomposability of `Z` was not
    /// decidable by the bounded idempotent search.
    pub skipped_indecomposability: u64,
}

/// Why a candidate datum was not returned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Screening {
    Accepted,
    NotExact(String),
    Splits,
    Decomposable,
    IndecomposabilityUndecidable,
}

/// The acceptance predicate of the search, applied to one datum.  Exposed
/// so that externally constructed instances can be screened by exactly the
/// same rule.
pub fn screen_datum(s: &SelfExtensionDatum) -> Result<Screening> {
    let seq = s.to_sequence()?;
    let exact = check_exact(&seq)?;
    if !exact.pass {
        return Ok(Screening::NotExact(exact.failures.join("; ")));
    }
    if check_split(&seq)? {
        return Ok(Screening::Splits);
    }
    let FieldSpec::Prime(p) = s.z.field() else {
        return Err(Error::UnsupportedField("screen_datum"));
    };
    match fp_indecomposable(&s.z, p)? {
        Some(true) => Ok(Screening::Accepted),
        Some(false) => Ok(Screening::Decomposable),
        None => Ok(Screening::IndecomposabilityUndecidable),
    }
}

/// Exhaustive idempotent search in `End(Z)` over `F_p`; `None` when the
/// coordinate space is too large to sweep.
fn fp_indecomposable(z: &ModulePoint, p: u32) -> Result<Option<bool>> {
    let end = hom_basis(z, z)?;
    let n = end.dim();
    if n > 3 || (p as u64).pow(n as u32) > 1_000_000 {
        return Ok(None);
    }
    let field = z.field();
    let identity = Matrix::identity(field, z.dim());
    for combo in FpCombos::new(p, n) {
        let scalars: Vec<Scalar> = combo.iter().map(|&c| field.from_i64(c as i64)).collect();
        let e = end.element(&scalars);
        if !e.is_zero() && e != identity && e.mul(&e)? == e {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

/// Odometer over `F_p^n`, first coordinate fastest.
struct FpCombos {
    p: u32,
    coords: Vec<u32>,
    done: bool,
}

impl FpCombos {
    fn new(p: u32, n: usize) -> FpCombos {
        FpCombos {
            p,
            coords: vec![0; n],
            done: false,
        }
    }
}

impl Iterator for FpCombos {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.coords.clone();
        let mut carried = true;
        for c in self.coords.iter_mut() {
            *c += 1;
            if *c < self.p {
                carried = false;
                break;
            }
            *c = 0;
        }
        if carried {
            self.done = true;
        }
        Some(out)
    }
}

/// Builds the module point with the given strictly upper-triangular
/// entries, one digit per entry per generator, row by row.
fn module_from_digits(
    alg: &Arc<AlgebraPresentation>,
    d: usize,
    t: usize,
    digits: &[u32],
) -> ModulePoint {
    let field = alg.field();
    let mut mats = Vec::with_capacity(t);
    let mut idx = 0;
    for _ in 0..t {
        let mut m = Matrix::zero(field, d, d);
        for r in 0..d {
            for c in (r + 1)..d {
                m.set(r, c, field.from_i64(digits[idx] as i64));
                idx += 1;
            }
        }
        mats.push(m);
    }
    ModulePoint::new(Arc::clone(alg), d, mats).expect("shapes agree")
}

fn decode_index(mut index: u64, p: u64, digits: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(digits);
    for _ in 0..digits {
        out.push((index % p) as u32);
        index /= p;
    }
    out
}

struct PairContext {
    z: ModulePoint,
    y: ModulePoint,
    hom_zy: HomSpace,
    hom_yz: HomSpace,
    nilpotent_f: Vec<Matrix>,
}

fn pair_context(
    alg: &Arc<AlgebraPresentation>,
    d: usize,
    t: usize,
    zi: u64,
    yi: u64,
    p: u32,
) -> Result<PairContext> {
    let strict = t * d * (d.saturating_sub(1)) / 2;
    let z = module_from_digits(alg, d, t, &decode_index(zi, p as u64, strict));
    let y = module_from_digits(alg, d, t, &decode_index(yi, p as u64, strict));
    let end_z = hom_basis(&z, &z)?;
    let hom_zy = hom_basis(&z, &y)?;
    let hom_yz = hom_basis(&y, &z)?;
    let mut nilpotent_f = Vec::new();
    for combo in FpCombos::new(p, end_z.dim()) {
        let scalars: Vec<Scalar> = combo
            .iter()
            .map(|&c| alg.field().from_i64(c as i64))
            .collect();
        let f = end_z.element(&scalars);
        if f.is_nilpotent()? {
            nilpotent_f.push(f);
        }
    }
    Ok(PairContext {
        z,
        y,
        hom_zy,
        hom_yz,
        nilpotent_f,
    })
}

struct PairResult {
    pair: u64,
    found: Vec<SelfExtensionDatum>,
    examined: u64,
    truncated: bool,
    skipped: u64,
}

fn consider(
    ctx: &PairContext,
    d: usize,
    ftilde: &Matrix,
    gtilde: &Matrix,
    htilde: &Matrix,
    found: &mut Vec<SelfExtensionDatum>,
    skipped: &mut u64,
) -> Result<()> {
    if ftilde.pow(2)? != htilde.mul(gtilde)? {
        return Ok(());
    }
    if Matrix::vstack(&[ftilde, gtilde])?.rank() != d {
        return Ok(());
    }
    if Matrix::hstack(&[ftilde, &htilde.neg()])?.rank() != d {
        return Ok(());
    }
    let datum = SelfExtensionDatum::new(
        ctx.z.clone(),
        ctx.y.clone(),
        ftilde.clone(),
        gtilde.clone(),
        htilde.clone(),
    )?;
    match screen_datum(&datum)? {
        Screening::Accepted => found.push(datum),
        Screening::IndecomposabilityUndecidable => *skipped += 1,
        _ => {}
    }
    Ok(())
}

fn search_pair(
    ctx: &PairContext,
    p: u32,
    d: usize,
    pair_budget: u64,
    sampled: bool,
    seed: u64,
    pair: u64,
) -> Result<PairResult> {
    let field = ctx.z.field();
    let mut found = Vec::new();
    let mut examined = 0u64;
    let mut skipped = 0u64;
    let mut truncated = sampled;

    if !sampled {
        'all: for f in &ctx.nilpotent_f {
            for gc in FpCombos::new(p, ctx.hom_zy.dim()) {
                let gs: Vec<Scalar> = gc.iter().map(|&c| field.from_i64(c as i64)).collect();
                let g = ctx.hom_zy.element(&gs);
                for hc in FpCombos::new(p, ctx.hom_yz.dim()) {
                    if examined >= pair_budget {
                        truncated = true;
                        break 'all;
                    }
                    examined += 1;
                    let hs: Vec<Scalar> =
                        hc.iter().map(|&c| field.from_i64(c as i64)).collect();
                    let h = ctx.hom_yz.element(&hs);
                    consider(ctx, d, f, &g, &h, &mut found, &mut skipped)?;
                }
            }
        }
    } else if !ctx.nilpotent_f.is_empty() {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed.wrapping_add(pair).wrapping_mul(0x9e37_79b9));
        while examined < pair_budget {
            examined += 1;
            let f = &ctx.nilpotent_f[rng.gen_range(0..ctx.nilpotent_f.len())];
            let gs: Vec<Scalar> = (0..ctx.hom_zy.dim())
                .map(|_| field.from_i64(rng.gen_range(0..p as i64)))
                .collect();
            let hs: Vec<Scalar> = (0..ctx.hom_yz.dim())
                .map(|_| field.from_i64(rng.gen_range(0..p as i64)))
                .collect();
            let g = ctx.hom_zy.element(&gs);
            let h = ctx.hom_yz.element(&hs);
            consider(ctx, d, f, &g, &h, &mut found, &mut skipped)?;
        }
    }
    Ok(PairResult {
        pair,
        found,
        examined,
        truncated,
        skipped,
    })
}

/// Enumerates self-extension data over `F_p`, returning every candidate
/// that is exact, nonsplit and has `Z` certified indecomposable.  The
/// budget is divided evenly over the module pairs, so the outcome is
/// independent of the number of worker threads.
pub fn search_thm2(params: &SearchParams) -> Result<SearchOutcome> {
    let FieldSpec::Prime(p) = params.field else {
        return Err(Error::UnsupportedField("searchThm2"));
    };
    if params.d_z == 0 || params.d_z > 4 {
        return Err(Error::Precondition("searchThm2 expects 1 <= dZ <= 4".into()));
    }
    if params.t == 0 || params.t > 2 {
        return Err(Error::Precondition("searchThm2 expects 1 <= t <= 2".into()));
    }
    let d = params.d_z;
    let t = params.t;
    let alg = Arc::new(AlgebraPresentation::free(params.field, t));
    let strict = t * d * (d - 1) / 2;
    let per_module = (p as u64)
        .checked_pow(strict as u32)
        .ok_or_else(|| Error::Precondition("module enumeration space overflows".into()))?;
    let num_pairs = per_module * per_module;
    let sampled = d >= 3;
    let pair_budget = (params.budget / num_pairs).max(1);

    let jobs = params.jobs.max(1);
    let mut results: Vec<PairResult> = if jobs == 1 || num_pairs == 1 {
        (0..num_pairs)
            .map(|pair| {
                let ctx = pair_context(&alg, d, t, pair / per_module, pair % per_module, p)?;
                search_pair(&ctx, p, d, pair_budget, sampled, params.seed, pair)
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        let chunk = num_pairs.div_ceil(jobs as u64);
        thread::scope(|scope| {
            let mut handles = Vec::new();
            for w in 0..jobs as u64 {
                let lo = w * chunk;
                let hi = ((w + 1) * chunk).min(num_pairs);
                let alg = Arc::clone(&alg);
                handles.push(scope.spawn(move || -> Result<Vec<PairResult>> {
                    (lo..hi)
                        .map(|pair| {
                            let ctx = pair_context(
                                &alg,
                                d,
                                t,
                                pair / per_module,
                                pair % per_module,
                                p,
                            )?;
                            search_pair(&ctx, p, d, pair_budget, sampled, params.seed, pair)
                        })
                        .collect()
                }));
            }
            let mut all = Vec::new();
            for h in handles {
                all.extend(h.join().expect("search worker panicked")?);
            }
            Ok::<_, Error>(all)
        })?
    };
    results.sort_by_key(|r| r.pair);

    let mut outcome = SearchOutcome {
        found: Vec::new(),
        examined: 0,
        budget_exhausted: false,
        skipped_indecomposability: 0,
    };
    for r in results {
        outcome.found.extend(r.found);
        outcome.examined += r.examined;
        outcome.budget_exhausted |= r.truncated;
        outcome.skipped_indecomposability += r.skipped;
    }
    Ok(outcome)
}
