//! Splitting machinery: Fitting decompositions, split-indecomposability,
//! radical homomorphisms and isomorphism testing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactfield::{FieldSpec, Matrix, Scalar};
use crate::{Error, Result};

use super::{end_algebra, hom_basis, hom_dim, is_module_hom, EndAlgebra, ModulePoint};

/// Outcome of the indecomposability test over a non-closed ground field.
///
/// `Inconclusive` is the honest verdict when `End/rad` is a division
/// algebra of dimension greater than one: the module is indecomposable
/// over the ground field, but its endomorphism ring is not split, and the
/// behaviour over the algebraic closure is not certified here.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndecVerdict {
    Yes,
    No,
    Inconclusive,
}

/// A module split along a non-nilpotent endomorphism: base change `P`
/// conjugates the point into block form, first block the restriction to
/// `im(e^d)`, second the restriction to `ker(e^d)`.
#[derive(Clone, Debug)]
pub struct FittingSplit {
    pub image_part: ModulePoint,
    pub kernel_part: ModulePoint,
    pub base_change: Matrix,
}

/// Fitting decomposition of `m` along an endomorphism `e`.
pub fn fitting_split(e: &Matrix, m: &ModulePoint) -> Result<FittingSplit> {
    if !is_module_hom(e, m, m)? {
        return Err(Error::NotAHomomorphism("fitting_split input".into()));
    }
    let d = m.dim();
    let stable = e.pow(d.max(1))?;
    // Canonical image basis: the original columns sitting at the pivot
    // positions of the echelon form.
    let (_, pivots) = stable.rref();
    let image_basis = stable.take_columns(&pivots);
    let kernel_basis = stable.nullspace_matrix();
    let p = Matrix::hstack(&[&image_basis, &kernel_basis])?;
    let pinv = p
        .inverse()
        .ok_or_else(|| Error::Internal("im(e^d) and ker(e^d) are not complementary".into()))?;
    let r = image_basis.cols();
    let mut image_mats = Vec::with_capacity(m.mats().len());
    let mut kernel_mats = Vec::with_capacity(m.mats().len());
    for mat in m.mats() {
        let conj = pinv.mul(mat)?.mul(&p)?;
        let upper_right = conj.submatrix(0, r, r, d - r);
        let lower_left = conj.submatrix(r, 0, d - r, r);
        if !upper_right.is_zero() || !lower_left.is_zero() {
            return Err(Error::Internal("Fitting blocks are not invariant".into()));
        }
        image_mats.push(conj.submatrix(0, 0, r, r));
        kernel_mats.push(conj.submatrix(r, r, d - r, d - r));
    }
    Ok(FittingSplit {
        image_part: ModulePoint::new(m.algebra().clone(), r, image_mats)?,
        kernel_part: ModulePoint::new(m.algebra().clone(), d - r, kernel_mats)?,
        base_change: p,
    })
}

fn rational_of(s: &Scalar) -> &BigRational {
    match s {
        Scalar::Rat(r) => r,
        Scalar::Fp(_) => panic!("rational scalar expected"),
    }
}

/// Is a nonnegative rational a perfect square?  Returns the square root.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer();
    let den = r.denom();
    let ns = num.sqrt();
    let ds = den.sqrt();
    if &(&ns * &ns) == num && &(&ds * &ds) == den {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

/// The semisimple quotient `S = End/rad` in coordinates: a basis given by
/// coordinate indices, multiplication by structure constants followed by
/// reduction mod the radical.
struct SemisimpleQuotient<'a> {
    end: &'a EndAlgebra,
    support: Vec<usize>,
}

impl<'a> SemisimpleQuotient<'a> {
    fn new(end: &'a EndAlgebra) -> Self {
        let support = end.semisimple_support();
        SemisimpleQuotient { end, support }
    }

    fn dim(&self) -> usize {
        self.support.len()
    }

    fn field(&self) -> FieldSpec {
        self.end.module().field()
    }

    /// Lifts quotient coordinates to full End coordinates.
    fn lift(&self, v: &[Scalar]) -> Vec<Scalar> {
        let field = self.field();
        let mut full = vec![field.zero(); self.end.dim()];
        for (i, &c) in self.support.iter().enumerate() {
            full[c] = v[i].clone();
        }
        full
    }

    fn project(&self, full: &[Scalar]) -> Vec<Scalar> {
        let reduced = self.end.reduce_mod_radical(full);
        self.support.iter().map(|&c| reduced[c].clone()).collect()
    }

    fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.project(&self.end.multiply(&self.lift(a), &self.lift(b)))
    }

    fn one(&self) -> Vec<Scalar> {
        self.project(self.end.identity_coords())
    }

    fn is_zero(&self, v: &[Scalar]) -> bool {
        let field = self.field();
        v.iter().all(|s| field.is_zero(s))
    }

    /// Left-multiplication matrix of the element `x`.
    fn left_mul(&self, x: &[Scalar]) -> Matrix {
        let field = self.field();
        let s = self.dim();
        let mut cols = Vec::with_capacity(s);
        for j in 0..s {
            let mut unit = vec![field.zero(); s];
            unit[j] = field.one();
            let prod = self.multiply(x, &unit);
            cols.push(Matrix::from_rows(field, prod.into_iter().map(|e| vec![e]).collect()).unwrap());
        }
        let refs: Vec<&Matrix> = cols.iter().collect();
        Matrix::hstack(&refs).unwrap()
    }

    /// Minimal polynomial of `x`, monic, as a coefficient vector
    /// `c_0 + c_1 t + ... + t^deg`.
    fn min_poly(&self, x: &[Scalar]) -> Vec<Scalar> {
        let field = self.field();
        let s = self.dim();
        let mut powers: Vec<Vec<Scalar>> = vec![self.one()];
        loop {
            // Is the last power dependent on the earlier ones?
            let k = powers.len();
            let mat = Matrix::from_fn(field, s, k, |r, c| powers[c][r].clone());
            let next = self.multiply(powers.last().unwrap(), x);
            let rhs = Matrix::from_rows(field, next.iter().map(|e| vec![e.clone()]).collect())
                .unwrap();
            if let Some(sol) = mat.solve(&rhs).expect("shapes agree") {
                // x^k = sum sol_i x^i, so minpoly = t^k - sum sol_i t^i.
                let mut coeffs: Vec<Scalar> =
                    (0..k).map(|i| field.neg(sol.at(i, 0))).collect();
                coeffs.push(field.one());
                return coeffs;
            }
            powers.push(next);
            assert!(powers.len() <= s + 1, "minimal polynomial search overran");
        }
    }
}

/// Split-indecomposability: `yes` iff `End/rad` is one-dimensional, `no`
/// iff a decomposition is exhibited, `inconclusive` iff `End/rad` appears
/// to be a division algebra of dimension > 1 over the non-closed ground
/// field.
///
/// The `no` detection is a bounded deterministic search (Fitting sweep over
/// the End basis, zero-divisor hunt in the semisimple quotient over basis
/// elements, pairwise sums/differences and products, plus the discriminant
/// test for quadratic minimal polynomials).
pub fn is_split_indecomposable(m: &ModulePoint) -> Result<IndecVerdict> {
    if !m.field().is_rational() {
        return Err(Error::UnsupportedField("isSplitIndecomposable"));
    }
    if m.dim() == 0 {
        // The zero module is not indecomposable.
        return Ok(IndecVerdict::No);
    }
    let end = end_algebra(m)?;
    if end.semisimple_dim() == 1 {
        return Ok(IndecVerdict::Yes);
    }

    // Fitting sweep: any non-nilpotent, non-invertible endomorphism splits
    // the module outright.
    let n = end.dim();
    let d = m.dim();
    let mut fitting_candidates: Vec<Matrix> = end.basis().to_vec();
    for i in 0..n {
        for j in (i + 1)..n {
            fitting_candidates.push(end.basis()[i].add(&end.basis()[j])?);
            fitting_candidates.push(end.basis()[i].sub(&end.basis()[j])?);
        }
    }
    for e in &fitting_candidates {
        if e.is_zero() {
            continue;
        }
        let stable_rank = e.pow(d)?.rank();
        if stable_rank > 0 && stable_rank < d {
            return Ok(IndecVerdict::No);
        }
    }

    // Zero-divisor hunt in the semisimple quotient.
    let quot = SemisimpleQuotient::new(&end);
    let s = quot.dim();
    let field = quot.field();
    let mut candidates: Vec<Vec<Scalar>> = Vec::new();
    let units: Vec<Vec<Scalar>> = (0..s)
        .map(|i| {
            let mut u = vec![field.zero(); s];
            u[i] = field.one();
            u
        })
        .collect();
    candidates.extend(units.iter().cloned());
    for i in 0..s {
        for j in (i + 1)..s {
            let sum: Vec<Scalar> = (0..s)
                .map(|k| field.add(&units[i][k], &units[j][k]))
                .collect();
            let diff: Vec<Scalar> = (0..s)
                .map(|k| field.sub(&units[i][k], &units[j][k]))
                .collect();
            candidates.push(sum);
            candidates.push(diff);
        }
    }
    for i in 0..s {
        for j in 0..s {
            candidates.push(quot.multiply(&units[i], &units[j]));
        }
    }

    for x in &candidates {
        if quot.is_zero(x) {
            continue;
        }
        // A singular left multiplication exhibits a zero divisor.
        if quot.left_mul(x).rank() < s {
            return Ok(IndecVerdict::No);
        }
        // Quadratic minimal polynomial with square discriminant: the
        // element generates k x k, not a quadratic field.
        let mp = quot.min_poly(x);
        if mp.len() == 3 {
            let c0 = rational_of(&mp[0]).clone();
            let c1 = rational_of(&mp[1]).clone();
            let disc = &c1 * &c1 - BigRational::from_integer(BigInt::from(4)) * &c0;
            if !disc.is_zero() && rational_sqrt(&disc).is_some() {
                return Ok(IndecVerdict::No);
            }
            if disc.is_zero() {
                // (t - c)^2 with x non-scalar: x - c is a nonzero nilpotent
                // in a semisimple algebra, necessarily a zero divisor.
                return Ok(IndecVerdict::No);
            }
        }
    }

    Ok(IndecVerdict::Inconclusive)
}

/// Does `f: src -> tgt` lie in the radical `rad(src, tgt)`?  True iff
/// `g . f` falls in `rad End(src)` for every basis element `g` of
/// `Hom(tgt, src)`.
pub fn is_radical_hom(f: &Matrix, src: &ModulePoint, tgt: &ModulePoint) -> Result<bool> {
    if !is_module_hom(f, src, tgt)? {
        return Err(Error::NotAHomomorphism("isRadicalHom input".into()));
    }
    if !src.field().is_rational() {
        return Err(Error::UnsupportedField("isRadicalHom"));
    }
    if src.dim() == 0 {
        return Ok(true);
    }
    let end = end_algebra(src)?;
    let back = hom_basis(tgt, src)?;
    for g in back.basis() {
        let composite = g.mul(f)?;
        let coords = end
            .coords_of(&composite)?
            .ok_or_else(|| Error::Internal("composite left End".into()))?;
        if !end.contains_in_radical(&coords) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Deterministic seed for the invertibility sampler; fixed so that reports
/// are byte-identical across runs.
const ISO_SEED: u64 = 0x6d6f_6476_6172_5f31;

/// Searches for an invertible element of `Hom(m, n)`.
///
/// Strategy: quick dimension rejections, then 8 seeded pseudo-random
/// coefficient vectors (entries in `{-2..2}` over the rationals, uniform
/// over a prime field), then `2 * d * dim Hom` deterministic moment-curve
/// points.  Any invertible combination proves the modules isomorphic; the
/// search is one-sided by construction.
pub fn find_isomorphism(m: &ModulePoint, n: &ModulePoint) -> Result<Option<Matrix>> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim() != n.dim() {
        return Ok(None);
    }
    let d = m.dim();
    if d == 0 {
        return Ok(Some(Matrix::zero(m.field(), 0, 0)));
    }
    let hom = hom_basis(m, n)?;
    let homn = hom.dim();
    if homn == 0 || hom_dim(m, m)? != homn {
        return Ok(None);
    }
    let field = m.field();

    let try_coords = |coords: &[Scalar]| -> Option<Matrix> {
        let cand = hom.element(coords);
        if cand.is_invertible() {
            Some(cand)
        } else {
            None
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(ISO_SEED);
    for _ in 0..8 {
        let coords: Vec<Scalar> = (0..homn)
            .map(|_| match field {
                FieldSpec::Rational => field.from_i64(rng.gen_range(-2..=2)),
                FieldSpec::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
            })
            .collect();
        if let Some(iso) = try_coords(&coords) {
            return Ok(Some(iso));
        }
    }
    // Deterministic fallback: evaluate the determinant polynomial along the
    // moment curve t -> (1, t, t^2, ...).
    for t in 1..=(2 * d * homn) {
        let mut coords = Vec::with_capacity(homn);
        let mut power = field.one();
        let tval = field.from_i64(t as i64);
        for _ in 0..homn {
            coords.push(power.clone());
            power = field.mul(&power, &tval);
        }
        if let Some(iso) = try_coords(&coords) {
            return Ok(Some(iso));
        }
    }
    Ok(None)
}

/// Are the two points isomorphic as modules?
pub fn is_isomorphic(m: &ModulePoint, n: &ModulePoint) -> Result<bool> {
    Ok(find_isomorphism(m, n)?.is_some())
}
