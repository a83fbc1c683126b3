use crate::algmod::{hom_basis, is_module_hom, ModulePoint};
use crate::exactfield::{FieldSpec, Matrix};
use crate::{Error, Result};

use super::{check_p1, check_p1_prime, CuspModule, Side};

/// An `R`-`R`-bimodule over the cusp ring: left actions `LA`, `LB` and
/// right actions `RA`, `RB` of `m^2` and `m^3`, each pair satisfying the
/// module relations and every left action commuting with every right one.
#[derive(Clone, Debug, PartialEq)]
pub struct CuspBimodule {
    dim: usize,
    la: Matrix,
    lb: Matrix,
    ra: Matrix,
    rb: Matrix,
}

impl CuspBimodule {
    pub fn new(la: Matrix, lb: Matrix, ra: Matrix, rb: Matrix) -> Result<Self> {
        let left = CuspModule::new(la, lb, Side::Left)?;
        let right = CuspModule::new(ra, rb, Side::Right)?;
        if left.dim() != right.dim() {
            return Err(Error::ShapeMismatch(
                "left and right actions act on different spaces".into(),
            ));
        }
        let (la, lb) = (left.action_m2().clone(), left.action_m3().clone());
        let (ra, rb) = (right.action_m2().clone(), right.action_m3().clone());
        for (l, r, tag) in [
            (&la, &ra, "LA/RA"),
            (&la, &rb, "LA/RB"),
            (&lb, &ra, "LB/RA"),
            (&lb, &rb, "LB/RB"),
        ] {
            if l.mul(r)? != r.mul(l)? {
                return Err(Error::InvalidCusp(format!(
                    "left and right actions do not commute ({tag})"
                )));
            }
        }
        Ok(CuspBimodule {
            dim: left.dim(),
            la,
            lb,
            ra,
            rb,
        })
    }

    /// Outer tensor product: left actions on the first factor, right
    /// actions on the second.
    pub fn tensor(left: &CuspModule, right: &CuspModule) -> Result<CuspBimodule> {
        let ir = Matrix::identity(right.field(), right.dim());
        let il = Matrix::identity(left.field(), left.dim());
        CuspBimodule::new(
            left.action_m2().kron(&ir),
            left.action_m3().kron(&ir),
            il.kron(right.action_m2()),
            il.kron(right.action_m3()),
        )
    }

    pub fn zero(field: FieldSpec) -> CuspBimodule {
        let e = Matrix::zero(field, 0, 0);
        CuspBimodule {
            dim: 0,
            la: e.clone(),
            lb: e.clone(),
            ra: e.clone(),
            rb: e,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> FieldSpec {
        self.la.field()
    }

    pub fn left_m2(&self) -> &Matrix {
        &self.la
    }

    pub fn left_m3(&self) -> &Matrix {
        &self.lb
    }

    pub fn right_m2(&self) -> &Matrix {
        &self.ra
    }

    pub fn right_m3(&self) -> &Matrix {
        &self.rb
    }

    /// The underlying left module `(dim, LA, LB)`.
    pub fn left_module(&self) -> CuspModule {
        CuspModule::new(self.la.clone(), self.lb.clone(), Side::Left)
            .expect("validated at construction")
    }

    /// The underlying right module `(dim, RA, RB)`.
    pub fn right_module(&self) -> CuspModule {
        CuspModule::new(self.ra.clone(), self.rb.clone(), Side::Right)
            .expect("validated at construction")
    }

    pub fn direct_sum(&self, other: &CuspBimodule) -> Result<CuspBimodule> {
        CuspBimodule::new(
            Matrix::block_diag(&[&self.la, &other.la]),
            Matrix::block_diag(&[&self.lb, &other.lb]),
            Matrix::block_diag(&[&self.ra, &other.ra]),
            Matrix::block_diag(&[&self.rb, &other.rb]),
        )
    }

    pub fn conjugate(&self, g: &Matrix) -> Result<CuspBimodule> {
        let gi = g
            .inverse()
            .ok_or_else(|| Error::Precondition("conjugating matrix is singular".into()))?;
        CuspBimodule::new(
            g.mul(&self.la)?.mul(&gi)?,
            g.mul(&self.lb)?.mul(&gi)?,
            g.mul(&self.ra)?.mul(&gi)?,
            g.mul(&self.rb)?.mul(&gi)?,
        )
    }

    /// Left multiplication by `[[m^3, -m^2], [m^4, -m^3]]` on
    /// `N = M^{2x2}`, in the component order `(n11, n12, n21, n22)`.
    pub fn xi(&self) -> Matrix {
        let f = self.field();
        let z = Matrix::zero(f, self.dim, self.dim);
        let la2 = self.la.pow(2).expect("square action");
        let na = self.la.neg();
        let nb = self.lb.neg();
        block4x4([
            [&self.lb, &z, &na, &z],
            [&z, &self.lb, &z, &na],
            [&la2, &z, &nb, &z],
            [&z, &la2, &z, &nb],
        ])
    }

    /// Right multiplication by `[[m^3, m^4], [-m^2, -m^3]]` on `N`.
    pub fn eta(&self) -> Matrix {
        let f = self.field();
        let z = Matrix::zero(f, self.dim, self.dim);
        let ra2 = self.ra.pow(2).expect("square action");
        let na = self.ra.neg();
        let nb = self.rb.neg();
        block4x4([
            [&self.rb, &na, &z, &z],
            [&ra2, &nb, &z, &z],
            [&z, &z, &self.rb, &na],
            [&z, &z, &ra2, &nb],
        ])
    }
}

fn block4x4(blocks: [[&Matrix; 4]; 4]) -> Matrix {
    let rows: Vec<Matrix> = blocks
        .iter()
        .map(|row| Matrix::hstack(&row.to_vec()).expect("block shapes agree"))
        .collect();
    let refs: Vec<&Matrix> = rows.iter().collect();
    Matrix::vstack(&refs).expect("block shapes agree")
}

/// Property P2: with `xi` and `eta` the two multiplications on
/// `N = M^{2x2}`, the sequence `N -(xi eta)-> N -(xi; eta)-> N (+) N` is
/// exact in the middle.  Since `im(xi eta)` always lands in
/// `ker xi \cap ker eta`, this is the rank identity
/// `rank(xi eta) + rank(xi stacked on eta) = 4 dim`.
pub fn check_p2(b: &CuspBimodule) -> Result<bool> {
    let xi = b.xi();
    let eta = b.eta();
    let xi_eta = xi.mul(&eta)?;
    if !xi.mul(&xi_eta)?.is_zero() || !eta.mul(&xi_eta)?.is_zero() {
        return Err(Error::Internal(
            "im(xi eta) not contained in ker xi and ker eta".into(),
        ));
    }
    let stacked = Matrix::vstack(&[&xi, &eta])?;
    Ok(xi_eta.rank() + stacked.rank() == 4 * b.dim())
}

/// Exactness report for the five-term sequence
/// `N^2 -(xi, eta)-> N -(xi eta)-> N -(xi; eta)-> N^2 -K-> N^3`
/// with `K = [[xi, 0], [eta, -xi], [0, eta]]`, plus the induced one-sided
/// properties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongReport {
    pub pass: bool,
    /// Exactness at the first interior `N`: `im(xi, eta) = ker(xi eta)`.
    pub position1: bool,
    /// Exactness at the second interior `N` (property P2 itself).
    pub position2: bool,
    /// Exactness at `N^2`: `im(xi; eta) = ker K`.
    pub position3: bool,
    pub p1_left: bool,
    pub p1_prime_right: bool,
}

/// Verifies the long exact sequence and the induced properties for a
/// bimodule with P2.  The precondition is `check_p2(b) = true`; on any
/// valid input with that precondition the report must pass.
pub fn check_long_n(b: &CuspBimodule) -> Result<LongReport> {
    if !check_p2(b)? {
        return Err(Error::Precondition("checkLongN requires checkP2 = true".into()));
    }
    let xi = b.xi();
    let eta = b.eta();
    let xi_eta = xi.mul(&eta)?;
    let n = 4 * b.dim();

    let side_by_side = Matrix::hstack(&[&xi, &eta])?;
    debug_assert!(xi_eta.mul(&side_by_side)?.is_zero());
    let position1 = side_by_side.rank() == n - xi_eta.rank();

    let position2 = true;

    let stacked = Matrix::vstack(&[&xi, &eta])?;
    let f = b.field();
    let z = Matrix::zero(f, n, n);
    let k_top = Matrix::hstack(&[&xi, &z])?;
    let k_mid = Matrix::hstack(&[&eta, &xi.neg()])?;
    let k_bot = Matrix::hstack(&[&z, &eta])?;
    let k = Matrix::vstack(&[&k_top, &k_mid, &k_bot])?;
    debug_assert!(k.mul(&stacked)?.is_zero());
    let position3 = stacked.rank() == 2 * n - k.rank();

    let p1_left = check_p1(&b.left_module())?;
    let p1_prime_right = check_p1_prime(&b.right_module())?;

    Ok(LongReport {
        pass: position1 && position2 && position3 && p1_left && p1_prime_right,
        position1,
        position2,
        position3,
        p1_left,
        p1_prime_right,
    })
}

/// Verdicts of the two-out-of-three check on a sub/total/quotient triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoOfThreeReport {
    pub pass: bool,
    pub sub_p2: bool,
    pub total_p2: bool,
    pub quotient_p2: bool,
}

/// Builds the quotient bimodule `total / im(embed)` and checks the
/// two-out-of-three principle: among sub, total and quotient it never
/// happens that exactly two have P2.
pub fn two_of_three(
    sub: &CuspBimodule,
    total: &CuspBimodule,
    embed: &Matrix,
) -> Result<TwoOfThreeReport> {
    let field = total.field();
    let (ds, dt) = (sub.dim(), total.dim());
    if embed.rows() != dt || embed.cols() != ds {
        return Err(Error::ShapeMismatch(format!(
            "embedding is {}x{}, expected {}x{}",
            embed.rows(),
            embed.cols(),
            dt,
            ds
        )));
    }
    if embed.rank() != ds {
        return Err(Error::NotAHomomorphism("embedding is not injective".into()));
    }
    for (s_act, t_act, tag) in [
        (sub.left_m2(), total.left_m2(), "LA"),
        (sub.left_m3(), total.left_m3(), "LB"),
        (sub.right_m2(), total.right_m2(), "RA"),
        (sub.right_m3(), total.right_m3(), "RB"),
    ] {
        if embed.mul(s_act)? != t_act.mul(embed)? {
            return Err(Error::NotAHomomorphism(format!(
                "embedding does not intertwine {tag}"
            )));
        }
    }

    // Complete the embedded basis and read off quotient actions.
    let mut cols = embed.clone();
    for j in 0..dt {
        if cols.cols() == dt {
            break;
        }
        let mut e = Matrix::zero(field, dt, 1);
        e.set(j, 0, field.one());
        let trial = Matrix::hstack(&[&cols, &e])?;
        if trial.rank() == cols.cols() + 1 {
            cols = trial;
        }
    }
    let p = cols;
    let pinv = p
        .inverse()
        .ok_or_else(|| Error::Internal("completed basis is singular".into()))?;
    let mut quot_actions = Vec::with_capacity(4);
    for act in [&total.la, &total.lb, &total.ra, &total.rb] {
        let conj = pinv.mul(act)?.mul(&p)?;
        if !conj.submatrix(ds, 0, dt - ds, ds).is_zero() {
            return Err(Error::Internal("embedded subspace is not invariant".into()));
        }
        quot_actions.push(conj.submatrix(ds, ds, dt - ds, dt - ds));
    }
    let quotient = CuspBimodule::new(
        quot_actions[0].clone(),
        quot_actions[1].clone(),
        quot_actions[2].clone(),
        quot_actions[3].clone(),
    )?;

    let sub_p2 = check_p2(sub)?;
    let total_p2 = check_p2(total)?;
    let quotient_p2 = check_p2(&quotient)?;
    let trues = [sub_p2, total_p2, quotient_p2].iter().filter(|&&v| v).count();
    Ok(TwoOfThreeReport {
        pass: trues != 2,
        sub_p2,
        total_p2,
        quotient_p2,
    })
}

/// The bimodule structure on `End_A(Y)` induced by a commuting pair
/// `x, y` of endomorphisms with `x^3 = y^2`: left actions by
/// postcomposition, right actions by precomposition, expressed in the
/// canonical Hom basis.
pub fn endo_bimodule(y_mod: &ModulePoint, x: &Matrix, y: &Matrix) -> Result<CuspBimodule> {
    if !is_module_hom(x, y_mod, y_mod)? || !is_module_hom(y, y_mod, y_mod)? {
        return Err(Error::NotAHomomorphism(
            "x or y is not an endomorphism of Y".into(),
        ));
    }
    if x.mul(y)? != y.mul(x)? {
        return Err(Error::Precondition("x and y do not commute".into()));
    }
    if x.pow(3)? != y.pow(2)? {
        return Err(Error::Precondition("x^3 differs from y^2".into()));
    }
    let hom = hom_basis(y_mod, y_mod)?;
    let n = hom.dim();
    let field = y_mod.field();
    if n == 0 {
        return Ok(CuspBimodule::zero(field));
    }
    let flat: Vec<Matrix> = hom.basis().iter().map(Matrix::flatten).collect();
    let cols: Vec<&Matrix> = flat.iter().collect();
    let basis_matrix = Matrix::hstack(&cols)?;
    let mut rhs_cols = Vec::with_capacity(4 * n);
    for e in hom.basis() {
        rhs_cols.push(x.mul(e)?.flatten());
    }
    for e in hom.basis() {
        rhs_cols.push(y.mul(e)?.flatten());
    }
    for e in hom.basis() {
        rhs_cols.push(e.mul(x)?.flatten());
    }
    for e in hom.basis() {
        rhs_cols.push(e.mul(y)?.flatten());
    }
    let rhs_refs: Vec<&Matrix> = rhs_cols.iter().collect();
    let sol = basis_matrix
        .solve(&Matrix::hstack(&rhs_refs)?)?
        .ok_or_else(|| Error::Internal("composition left the endomorphism algebra".into()))?;
    let action = |block: usize| sol.submatrix(0, block * n, n, n);
    CuspBimodule::new(action(0), action(1), action(2), action(3))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algmod::AlgebraPresentation;

    const Q: FieldSpec = FieldSpec::Rational;

    #[test]
    fn xi_eta_relations() {
        let m1 = CuspModule::truncation(3, Q, Side::Left);
        let m2 = CuspModule::truncation(2, Q, Side::Right);
        let b = CuspBimodule::tensor(&m1, &m2).unwrap();
        let xi = b.xi();
        let eta = b.eta();
        assert!(xi.mul(&xi).unwrap().is_zero());
        assert!(eta.mul(&eta).unwrap().is_zero());
        assert_eq!(xi.mul(&eta).unwrap(), eta.mul(&xi).unwrap());
    }

    #[test]
    fn zero_bimodule_has_p2() {
        assert!(check_p2(&CuspBimodule::zero(Q)).unwrap());
        // The long sequence holds vacuously.
        assert!(check_long_n(&CuspBimodule::zero(Q)).unwrap().pass);
    }

    #[test]
    fn one_dimensional_trivial_bimodule_fails_p2() {
        let z = Matrix::zero(Q, 1, 1);
        let b = CuspBimodule::new(z.clone(), z.clone(), z.clone(), z).unwrap();
        assert!(!check_p2(&b).unwrap());
    }

    #[test]
    fn koszul_style_tensor_has_p2() {
        // (R/m^2) tensor (R/n^2): the quotient by a regular sequence.
        let b = CuspBimodule::tensor(
            &CuspModule::truncation(2, Q, Side::Left),
            &CuspModule::truncation(2, Q, Side::Right),
        )
        .unwrap();
        assert_eq!(b.dim(), 4);
        assert!(check_p2(&b).unwrap());
        let long = check_long_n(&b).unwrap();
        assert!(long.pass, "{long:?}");
    }

    #[test]
    fn long_sequence_requires_p2() {
        let z = Matrix::zero(Q, 1, 1);
        let b = CuspBimodule::new(z.clone(), z.clone(), z.clone(), z).unwrap();
        assert!(matches!(check_long_n(&b), Err(Error::Precondition(_))));
    }

    #[test]
    fn two_of_three_trivial_splits() {
        let total = CuspBimodule::tensor(
            &CuspModule::truncation(2, Q, Side::Left),
            &CuspModule::truncation(2, Q, Side::Right),
        )
        .unwrap();
        // sub = 0.
        let empty = Matrix::zero(Q, total.dim(), 0);
        let zero = CuspBimodule::zero(Q);
        let rep = two_of_three(&zero, &total, &empty).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.quotient_p2, rep.total_p2);
        // sub = total via the identity.
        let id = Matrix::identity(Q, total.dim());
        let rep = two_of_three(&total, &total, &id).unwrap();
        assert!(rep.pass);
        assert!(rep.quotient_p2, "zero quotient has P2");
    }

    #[test]
    fn endo_bimodule_zero_maps() {
        let alg = Arc::new(AlgebraPresentation::free(Q, 1));
        let y = crate::algmod::ModulePoint::new(
            Arc::clone(&alg),
            2,
            vec![Matrix::from_i64(Q, &[&[0, 1], &[0, 0]])],
        )
        .unwrap();
        let zero = Matrix::zero(Q, 2, 2);
        let b = endo_bimodule(&y, &zero, &zero).unwrap();
        assert_eq!(b.dim(), 2);
        assert!(b.left_m2().is_zero());
        assert!(b.right_m3().is_zero());
    }

    #[test]
    fn endo_bimodule_rejects_bad_pairs() {
        let alg = Arc::new(AlgebraPresentation::free(Q, 1));
        let y = crate::algmod::ModulePoint::new(
            Arc::clone(&alg),
            2,
            vec![Matrix::zero(Q, 2, 2)],
        )
        .unwrap();
        // x = identity: x^3 = 1 but y = 0 gives y^2 = 0.
        let res = endo_bimodule(&y, &Matrix::identity(Q, 2), &Matrix::zero(Q, 2, 2));
        assert!(matches!(res, Err(Error::Precondition(_))));
    }
}
