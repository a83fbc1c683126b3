use crate::algmod::{hom_basis, hom_dim, is_module_hom, ModulePoint};
use crate::exactfield::Matrix;
use crate::{Error, Result};

/// A candidate short exact sequence `0 -> U -f-> W -g-> V -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExactCandidate {
    pub u: ModulePoint,
    pub w: ModulePoint,
    pub v: ModulePoint,
    pub f: Matrix,
    pub g: Matrix,
}

/// Outcome of the exactness check, with one reason string per failed
/// condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactReport {
    pub pass: bool,
    pub failures: Vec<String>,
}

impl ShortExactCandidate {
    pub fn new(
        u: ModulePoint,
        w: ModulePoint,
        v: ModulePoint,
        f: Matrix,
        g: Matrix,
    ) -> Result<Self> {
        if !u.same_algebra(&w) || !w.same_algebra(&v) {
            return Err(Error::AlgebraMismatch);
        }
        if f.rows() != w.dim() || f.cols() != u.dim() {
            return Err(Error::ShapeMismatch(format!(
                "f is {}x{}, expected {}x{}",
                f.rows(),
                f.cols(),
                w.dim(),
                u.dim()
            )));
        }
        if g.rows() != v.dim() || g.cols() != w.dim() {
            return Err(Error::ShapeMismatch(format!(
                "g is {}x{}, expected {}x{}",
                g.rows(),
                g.cols(),
                v.dim(),
                w.dim()
            )));
        }
        Ok(ShortExactCandidate { u, w, v, f, g })
    }
}

/// Exactness: `f` injective, `g` surjective, `g f = 0` and
/// `rank f + rank g = dim W`.  Errors on non-homomorphism inputs.
pub fn check_exact(s: &ShortExactCandidate) -> Result<ExactReport> {
    if !is_module_hom(&s.f, &s.u, &s.w)? {
        return Err(Error::NotAHomomorphism("f in the candidate sequence".into()));
    }
    if !is_module_hom(&s.g, &s.w, &s.v)? {
        return Err(Error::NotAHomomorphism("g in the candidate sequence".into()));
    }
    let mut failures = Vec::new();
    let rf = s.f.rank();
    let rg = s.g.rank();
    if rf != s.u.dim() {
        failures.push(format!("f not injective: rank {} < {}", rf, s.u.dim()));
    }
    if rg != s.v.dim() {
        failures.push(format!("g not surjective: rank {} < {}", rg, s.v.dim()));
    }
    if !s.g.mul(&s.f)?.is_zero() {
        failures.push("composition nonzero".into());
    }
    if rf + rg != s.w.dim() {
        failures.push(format!(
            "rank f + rank g = {} differs from dim W = {}",
            rf + rg,
            s.w.dim()
        ));
    }
    Ok(ExactReport {
        pass: failures.is_empty(),
        failures,
    })
}

/// Does `u: U -> X` factor through `f: U -> W`?  Decided by solving for a
/// homomorphism `h: W -> X` with `h f = u` over the Hom basis of `(W, X)`.
pub fn factors_left(
    u: &Matrix,
    f: &Matrix,
    u_mod: &ModulePoint,
    w_mod: &ModulePoint,
    x_mod: &ModulePoint,
) -> Result<bool> {
    if !is_module_hom(u, u_mod, x_mod)? {
        return Err(Error::NotAHomomorphism("u in factorization test".into()));
    }
    if !is_module_hom(f, u_mod, w_mod)? {
        return Err(Error::NotAHomomorphism("f in factorization test".into()));
    }
    let hom = hom_basis(w_mod, x_mod)?;
    if hom.dim() == 0 {
        return Ok(u.is_zero());
    }
    let composites: Vec<Matrix> = hom
        .basis()
        .iter()
        .map(|h| h.mul(f).map(|m| m.flatten()))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&Matrix> = composites.iter().collect();
    let system = Matrix::hstack(&refs)?;
    Ok(system.solve(&u.flatten())?.is_some())
}

/// Splitness of an exact sequence, decided three independent ways which
/// must agree:
///
/// 1. `[U (+) V, U] = [W, U]`,
/// 2. `[V, U (+) V] = [V, W]`,
/// 3. a direct section search: does `1_U` factor through `f`?
///
/// Disagreement between the criteria is an internal error, never a
/// verdict.
pub fn check_split(s: &ShortExactCandidate) -> Result<bool> {
    let report = check_exact(s)?;
    if !report.pass {
        return Err(Error::Precondition(format!(
            "checkSplit requires an exact sequence: {:?}",
            report.failures
        )));
    }
    let uv = s.u.direct_sum(&s.v)?;
    let c3 = hom_dim(&uv, &s.u)? == hom_dim(&s.w, &s.u)?;
    let c4 = hom_dim(&s.v, &uv)? == hom_dim(&s.v, &s.w)?;
    let identity_u = Matrix::identity(s.u.field(), s.u.dim());
    let direct = factors_left(&identity_u, &s.f, &s.u, &s.w, &s.u)?;
    if c3 != c4 || c3 != direct {
        return Err(Error::Internal(format!(
            "split criteria disagree: [U+V,U]=[W,U] is {c3}, [V,U+V]=[V,W] is {c4}, section search is {direct}"
        )));
    }
    Ok(c3)
}
