use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algmod::{
    end_algebra, find_isomorphism, fitting_split, hom_basis, hom_dim, is_isomorphic,
    is_radical_hom, is_split_indecomposable, orbit_dim, IndecVerdict, ModulePoint,
};
use crate::exactfield::{Matrix, Scalar};
use crate::{Error, Result};

use super::{check_exact, ExactReport, ShortExactCandidate};

/// The optional dual witness `0 -> N -f-> T (+) M -g-> T -> 0`.  No
/// operation requires it; when present it is verified alongside the main
/// sequence.
#[derive(Clone, Debug)]
pub struct DualWitness {
    pub t: ModulePoint,
    /// `(dim T + d) x d`.
    pub f: Matrix,
    /// `dim T x (dim T + d)`.
    pub g: Matrix,
}

/// A degeneration certificate: modules `M`, `N`, `Z` of a common algebra
/// with `dim M = dim N`, and maps making
/// `0 -> Z -f-> Z (+) M -g-> N -> 0` exact.  `normalized` records that `f`
/// has been verified radical.
#[derive(Clone, Debug)]
pub struct DegenerationCertificate {
    pub m: ModulePoint,
    pub n: ModulePoint,
    pub z: ModulePoint,
    /// `(dim Z + d) x dim Z`.
    pub f: Matrix,
    /// `d x (dim Z + d)`.
    pub g: Matrix,
    pub normalized: bool,
    pub dual: Option<DualWitness>,
}

impl DegenerationCertificate {
    pub fn new(
        m: ModulePoint,
        n: ModulePoint,
        z: ModulePoint,
        f: Matrix,
        g: Matrix,
    ) -> Result<Self> {
        if !m.same_algebra(&n) || !m.same_algebra(&z) {
            return Err(Error::AlgebraMismatch);
        }
        if m.dim() != n.dim() {
            return Err(Error::ShapeMismatch(format!(
                "M has dimension {} but N has dimension {}",
                m.dim(),
                n.dim()
            )));
        }
        let (dz, d) = (z.dim(), m.dim());
        if f.rows() != dz + d || f.cols() != dz {
            return Err(Error::ShapeMismatch(format!(
                "f is {}x{}, expected {}x{}",
                f.rows(),
                f.cols(),
                dz + d,
                dz
            )));
        }
        if g.rows() != d || g.cols() != dz + d {
            return Err(Error::ShapeMismatch(format!(
                "g is {}x{}, expected {}x{}",
                g.rows(),
                g.cols(),
                d,
                dz + d
            )));
        }
        Ok(DegenerationCertificate {
            m,
            n,
            z,
            f,
            g,
            normalized: false,
            dual: None,
        })
    }

    /// Attaches the dual witness after checking its shapes.
    pub fn with_dual(mut self, t: ModulePoint, f: Matrix, g: Matrix) -> Result<Self> {
        if !t.same_algebra(&self.m) {
            return Err(Error::AlgebraMismatch);
        }
        let (dt, d) = (t.dim(), self.m.dim());
        if f.rows() != dt + d || f.cols() != d || g.rows() != dt || g.cols() != dt + d {
            return Err(Error::ShapeMismatch("dual witness maps".into()));
        }
        self.dual = Some(DualWitness { t, f, g });
        Ok(self)
    }

    /// The middle term `Z (+) M`.
    pub fn middle(&self) -> Result<ModulePoint> {
        self.z.direct_sum(&self.m)
    }

    pub fn to_sequence(&self) -> Result<ShortExactCandidate> {
        ShortExactCandidate::new(
            self.z.clone(),
            self.middle()?,
            self.n.clone(),
            self.f.clone(),
            self.g.clone(),
        )
    }

    pub fn check_exact(&self) -> Result<ExactReport> {
        check_exact(&self.to_sequence()?)
    }

    /// Exactness of the dual witness, when one is attached.
    pub fn check_dual(&self) -> Result<Option<ExactReport>> {
        match &self.dual {
            None => Ok(None),
            Some(w) => {
                let seq = ShortExactCandidate::new(
                    self.n.clone(),
                    w.t.direct_sum(&self.m)?,
                    w.t.clone(),
                    w.f.clone(),
                    w.g.clone(),
                )?;
                Ok(Some(check_exact(&seq)?))
            }
        }
    }
}

/// Builds the standard certificate from an `A`-invariant subspace of `M`:
/// with `Z = U` and `N = U (+) M/U`, the sequence
/// `0 -> U -(0, incl)-> U (+) M -(1 (+) proj)-> U (+) M/U -> 0` is exact.
pub fn certificate_from_submodule(
    m: &ModulePoint,
    basis_u: &Matrix,
) -> Result<DegenerationCertificate> {
    let field = m.field();
    let d = m.dim();
    if basis_u.rows() != d {
        return Err(Error::ShapeMismatch(format!(
            "subspace basis has {} rows in a dimension-{} module",
            basis_u.rows(),
            d
        )));
    }
    if basis_u.rank() != basis_u.cols() {
        return Err(Error::Precondition("subspace basis is not independent".into()));
    }
    let r = basis_u.cols();
    let z = m.restrict(basis_u)?;

    // Greedily complete the basis by standard vectors.
    let mut cols = basis_u.clone();
    let mut complement: Vec<usize> = Vec::new();
    for j in 0..d {
        if cols.cols() == d {
            break;
        }
        let mut e = Matrix::zero(field, d, 1);
        e.set(j, 0, field.one());
        let trial = Matrix::hstack(&[&cols, &e])?;
        if trial.rank() == cols.cols() + 1 {
            cols = trial;
            complement.push(j);
        }
    }
    let p = cols;
    let pinv = p
        .inverse()
        .ok_or_else(|| Error::Internal("completed basis is singular".into()))?;

    // Quotient action: lower-right block of P^-1 m_i P.
    let mut quot_mats = Vec::with_capacity(m.mats().len());
    for (gidx, mat) in m.mats().iter().enumerate() {
        let conj = pinv.mul(mat)?.mul(&p)?;
        if !conj.submatrix(r, 0, d - r, r).is_zero() {
            return Err(Error::NotInvariant { generator: gidx });
        }
        quot_mats.push(conj.submatrix(r, r, d - r, d - r));
    }
    let quotient = ModulePoint::new(m.algebra().clone(), d - r, quot_mats)?;
    let n = z.direct_sum(&quotient)?;

    let f = Matrix::vstack(&[&Matrix::zero(field, r, r), basis_u])?;
    let proj = pinv.submatrix(r, 0, d - r, d);
    let g_top = Matrix::hstack(&[&Matrix::identity(field, r), &Matrix::zero(field, r, d)])?;
    let g_bottom = Matrix::hstack(&[&Matrix::zero(field, d - r, r), &proj])?;
    let g = Matrix::vstack(&[&g_top, &g_bottom])?;

    DegenerationCertificate::new(m.clone(), n, z, f, g)
}

/// The codimension-one Hom identities `[M,M] = [M,N] = [N,M] = [N,N] - 1`
/// together with the orbit-dimension difference.
#[derive(Clone, Debug)]
pub struct Codim1Report {
    pub pass: bool,
    pub hom_mm: usize,
    pub hom_mn: usize,
    pub hom_nm: usize,
    pub hom_nn: usize,
    pub orbit_m: usize,
    pub orbit_n: usize,
    pub failures: Vec<String>,
}

pub fn codim1_identities(m: &ModulePoint, n: &ModulePoint) -> Result<Codim1Report> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim() != n.dim() {
        return Err(Error::ShapeMismatch(
            "codimension-one identities need points of one variety".into(),
        ));
    }
    let hom_mm = hom_dim(m, m)?;
    let hom_mn = hom_dim(m, n)?;
    let hom_nm = hom_dim(n, m)?;
    let hom_nn = hom_dim(n, n)?;
    let orbit_m = orbit_dim(m)?;
    let orbit_n = orbit_dim(n)?;
    let mut failures = Vec::new();
    let codim = orbit_m as i64 - orbit_n as i64;
    if codim != 1 {
        failures.push(format!("codim = {codim} (expected 1)"));
    }
    if hom_mm != hom_mn {
        failures.push(format!("[M,M] = {hom_mm} differs from [M,N] = {hom_mn}"));
    }
    if hom_mm != hom_nm {
        failures.push(format!("[M,M] = {hom_mm} differs from [N,M] = {hom_nm}"));
    }
    if hom_mm + 1 != hom_nn {
        failures.push(format!("[N,N] = {hom_nn} differs from [M,M] + 1 = {}", hom_mm + 1));
    }
    Ok(Codim1Report {
        pass: failures.is_empty(),
        hom_mm,
        hom_mn,
        hom_nm,
        hom_nn,
        orbit_m,
        orbit_n,
        failures,
    })
}

/// Rewrites a certificate so that `f` becomes a radical homomorphism,
/// shrinking `Z` by splitting off matched direct summands.  `M` and `N`
/// are preserved; exactness is re-established at every step.
pub fn normalize_certificate(c: &DegenerationCertificate) -> Result<DegenerationCertificate> {
    if !c.m.field().is_rational() {
        return Err(Error::UnsupportedField("normalizeCertificate"));
    }
    let report = c.check_exact()?;
    if !report.pass {
        return Err(Error::Precondition(format!(
            "normalizeCertificate requires an exact certificate: {:?}",
            report.failures
        )));
    }
    let mut cur = c.clone();
    loop {
        let middle = cur.middle()?;
        if is_radical_hom(&cur.f, &cur.z, &middle)? {
            cur.normalized = true;
            return Ok(cur);
        }
        cur = shrink_step(&cur, &middle)?;
    }
}

/// One reduction step: find endomorphisms `u: W -> Z` and `w: Z -> Z` with
/// `x = u f w` non-nilpotent, split `Z` along `x`, and cancel the matched
/// copy of the invertible part from both `Z` and `W = Z (+) M`.
fn shrink_step(
    cur: &DegenerationCertificate,
    middle: &ModulePoint,
) -> Result<DegenerationCertificate> {
    let z = &cur.z;
    let dz = z.dim();
    let dw = middle.dim();
    let back = hom_basis(middle, z)?;
    let end_z = end_algebra(z)?;
    let composites: Vec<Matrix> = back
        .basis()
        .iter()
        .map(|u| u.mul(&cur.f))
        .collect::<Result<Vec<_>>>()?;

    // Scan for a non-nilpotent composite: first `u f` alone (w = 1), then
    // pairs `u f e` over the End basis.  Radicality already failed, so the
    // pair scan cannot come up empty.
    let mut witness: Option<(Matrix, Matrix)> = None;
    'outer: for (ui, v) in composites.iter().enumerate() {
        if !v.is_nilpotent()? {
            witness = Some((
                back.basis()[ui].clone(),
                Matrix::identity(z.field(), dz),
            ));
            break 'outer;
        }
        for e in end_z.basis() {
            let x = v.mul(e)?;
            if !x.is_nilpotent()? {
                witness = Some((back.basis()[ui].clone(), e.clone()));
                break 'outer;
            }
        }
    }
    let (u, w) = witness.ok_or_else(|| {
        Error::Internal("no non-nilpotent composite although f is not radical".into())
    })?;

    let x = u.mul(&cur.f)?.mul(&w)?;
    let split = fitting_split(&x, z)?;
    let r = split.image_part.dim();
    debug_assert!(r > 0);
    let p = &split.base_change;
    let pinv = p.inverse().expect("Fitting base change is invertible");
    let iota1 = p.submatrix(0, 0, dz, r);
    let proj1 = pinv.submatrix(0, 0, r, dz);

    // x restricted to its invertible part, in the split coordinates.
    let x1 = proj1.mul(&x)?.mul(&iota1)?;
    let x1inv = x1
        .inverse()
        .ok_or_else(|| Error::Internal("x is not invertible on im(x^dz)".into()))?;

    // q: W -> Z_1 retracts the embedded copy f(w(Z_1)).
    let q = x1inv.mul(&proj1)?.mul(&u)?;
    let embedded = cur.f.mul(&w)?.mul(&iota1)?;
    if q.mul(&embedded)? != Matrix::identity(z.field(), r) {
        return Err(Error::Internal("retraction identity failed".into()));
    }

    // Shrink Z to ker(q f) and W to ker(q); both are invariant.
    let qf = q.mul(&cur.f)?;
    let z_kernel = qf.nullspace_matrix();
    let z_new = z.restrict(&z_kernel)?;
    let w_kernel = q.nullspace_matrix();
    let w_new = middle.restrict(&w_kernel)?;

    let f_image = cur.f.mul(&z_kernel)?;
    let f_new = w_kernel
        .solve(&f_image)?
        .ok_or_else(|| Error::Internal("f does not map ker(qf) into ker(q)".into()))?;
    let g_new = cur.g.mul(&w_kernel)?;

    let seq = ShortExactCandidate::new(
        z_new.clone(),
        w_new.clone(),
        cur.n.clone(),
        f_new.clone(),
        g_new.clone(),
    )?;
    let report = check_exact(&seq)?;
    if !report.pass {
        return Err(Error::Internal(format!(
            "shrunk sequence lost exactness: {:?}",
            report.failures
        )));
    }
    let dual = cur.dual.clone();

    // Restore the block shape Z_new (+) M via an explicit isomorphism.
    let target_middle = z_new.direct_sum(&cur.m)?;
    let theta = find_isomorphism(&target_middle, &w_new)?.ok_or_else(|| {
        Error::Internal("no isomorphism between the shrunk middle and Z (+) M".into())
    })?;
    let theta_inv = theta.inverse().expect("sampled isomorphism is invertible");
    let f_block = theta_inv.mul(&f_new)?;
    let g_block = g_new.mul(&theta)?;
    debug_assert!(dw - r == target_middle.dim());

    let mut cert =
        DegenerationCertificate::new(cur.m.clone(), cur.n.clone(), z_new, f_block, g_block)?;
    cert.dual = dual;
    Ok(cert)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegularityStatus {
    RegularCertified,
    TheoremViolation,
    PreconditionFailure,
}

/// Outcome of the regularity certification.
///
/// `TheoremViolation` means every precondition was satisfied and one of the
/// certified identities still failed; on correct inputs this is impossible
/// and serves as a tripwire for implementation bugs.
#[derive(Clone, Debug)]
pub struct RegularityReport {
    pub status: RegularityStatus,
    pub precondition_failures: Vec<String>,
    pub identity_failures: Vec<String>,
    pub codim1: Option<Codim1Report>,
    pub hom_nz: usize,
    pub hom_mz: usize,
    pub hom_zm: usize,
    pub hom_zn: usize,
    pub hom_zm_m: usize,
    pub hom_zm_n: usize,
}

/// Certifies regularity of the orbit closure of `M` at `N` from a
/// normalized codimension-one certificate: checks `[N,Z] = [M,Z] + 1`,
/// `[Z,M] = [Z,N]`, and `[Z (+) M, M] = [Z (+) M, N]`.
pub fn certify_regularity(c: &DegenerationCertificate) -> Result<RegularityReport> {
    if !c.m.field().is_rational() {
        return Err(Error::UnsupportedField("certifyRegularity"));
    }
    let mut pre = Vec::new();
    let exact = c.check_exact()?;
    if !exact.pass {
        for f in &exact.failures {
            pre.push(format!("not exact: {f}"));
        }
    }
    if let Some(dual) = c.check_dual()? {
        if !dual.pass {
            for f in &dual.failures {
                pre.push(format!("dual witness not exact: {f}"));
            }
        }
    }
    let middle = c.middle()?;
    if exact.pass && !is_radical_hom(&c.f, &c.z, &middle)? {
        pre.push("f not radical".into());
    }
    let codim1 = codim1_identities(&c.m, &c.n)?;
    if !codim1.pass {
        for f in &codim1.failures {
            pre.push(format!("codimension-one identities: {f}"));
        }
    }
    match is_split_indecomposable(&c.z)? {
        IndecVerdict::Yes => {}
        IndecVerdict::No => pre.push("Z is not indecomposable".into()),
        IndecVerdict::Inconclusive => {
            pre.push("Z indecomposability inconclusive over the ground field".into())
        }
    }

    let hom_nz = hom_dim(&c.n, &c.z)?;
    let hom_mz = hom_dim(&c.m, &c.z)?;
    let hom_zm = hom_dim(&c.z, &c.m)?;
    let hom_zn = hom_dim(&c.z, &c.n)?;
    let hom_zm_m = hom_dim(&middle, &c.m)?;
    let hom_zm_n = hom_dim(&middle, &c.n)?;

    if !pre.is_empty() {
        return Ok(RegularityReport {
            status: RegularityStatus::PreconditionFailure,
            precondition_failures: pre,
            identity_failures: Vec::new(),
            codim1: Some(codim1),
            hom_nz,
            hom_mz,
            hom_zm,
            hom_zn,
            hom_zm_m,
            hom_zm_n,
        });
    }

    let mut bad = Vec::new();
    if hom_nz != hom_mz + 1 {
        bad.push(format!("[N,Z] = {hom_nz} differs from [M,Z] + 1 = {}", hom_mz + 1));
    }
    if hom_zm != hom_zn {
        bad.push(format!("[Z,M] = {hom_zm} differs from [Z,N] = {hom_zn}"));
    }
    if hom_zm_m != hom_zm_n {
        bad.push(format!(
            "[Z+M,M] = {hom_zm_m} differs from [Z+M,N] = {hom_zm_n}"
        ));
    }
    Ok(RegularityReport {
        status: if bad.is_empty() {
            RegularityStatus::RegularCertified
        } else {
            RegularityStatus::TheoremViolation
        },
        precondition_failures: Vec::new(),
        identity_failures: bad,
        codim1: Some(codim1),
        hom_nz,
        hom_mz,
        hom_zm,
        hom_zn,
        hom_zm_m,
        hom_zm_n,
    })
}

/// Outcome of comparing two normalized certificates for the same `(M, N)`.
#[derive(Clone, Debug)]
pub struct UniquenessReport {
    pub equivalent: bool,
    pub z_isomorphic: bool,
    pub precondition_failures: Vec<String>,
}

const UNIQ_SEED: u64 = 0x6d6f_6476_6172_5f32;

/// Checks that two certificates are equivalent: `Z_1` isomorphic to `Z_2`
/// and a commuting pair of isomorphisms `(i, j)` with `j f_1 = f_2 i`,
/// `g_2 j = g_1` exists.  The pair is found by solving the linear
/// constraint system over the Hom bases and sampling the affine solution
/// set for simultaneous invertibility.
pub fn uniqueness_check(
    c1: &DegenerationCertificate,
    c2: &DegenerationCertificate,
) -> Result<UniquenessReport> {
    let mut pre: Vec<String> = Vec::new();
    if c1.m != c2.m {
        pre.push("certificates have different M".into());
    }
    if c1.n != c2.n {
        pre.push("certificates have different N".into());
    }
    if !pre.is_empty() {
        return Ok(UniquenessReport {
            equivalent: false,
            z_isomorphic: false,
            precondition_failures: pre,
        });
    }
    for (tag, c) in [("first", c1), ("second", c2)] {
        let exact = c.check_exact()?;
        if !exact.pass {
            pre.push(format!("{tag} certificate not exact"));
            continue;
        }
        if !is_radical_hom(&c.f, &c.z, &c.middle()?)? {
            pre.push(format!("{tag} certificate not normalized"));
        }
        let reg = certify_regularity(c)?;
        if reg.status == RegularityStatus::PreconditionFailure {
            for f in reg.precondition_failures {
                pre.push(format!("{tag} certificate: {f}"));
            }
        }
    }
    if !pre.is_empty() {
        return Ok(UniquenessReport {
            equivalent: false,
            z_isomorphic: false,
            precondition_failures: pre,
        });
    }

    let z_isomorphic = is_isomorphic(&c1.z, &c2.z)?;
    let w1 = c1.middle()?;
    let w2 = c2.middle()?;
    let hi = hom_basis(&c1.z, &c2.z)?;
    let hj = hom_basis(&w1, &w2)?;
    let field = c1.m.field();
    let (ni, nj) = (hi.dim(), hj.dim());

    // Linear system over the coefficients (alpha, beta) of i and j:
    //   j f_1 - f_2 i = 0   and   g_2 j = g_1.
    let rows1 = w2.dim() * c1.z.dim();
    let rows2 = c1.n.dim() * w1.dim();
    let mut system = Matrix::zero(field, rows1 + rows2, ni + nj);
    let mut rhs = Matrix::zero(field, rows1 + rows2, 1);
    for (col, b) in hi.basis().iter().enumerate() {
        let contrib = c2.f.mul(b)?.neg().flatten();
        for r in 0..rows1 {
            system.set(r, col, contrib.at(r, 0).clone());
        }
    }
    for (col, h) in hj.basis().iter().enumerate() {
        let contrib = h.mul(&c1.f)?.flatten();
        for r in 0..rows1 {
            system.set(r, ni + col, contrib.at(r, 0).clone());
        }
        let contrib2 = c2.g.mul(h)?.flatten();
        for r in 0..rows2 {
            system.set(rows1 + r, ni + col, contrib2.at(r, 0).clone());
        }
    }
    let g1_flat = c1.g.flatten();
    for r in 0..rows2 {
        rhs.set(rows1 + r, 0, g1_flat.at(r, 0).clone());
    }

    let Some(particular) = system.solve(&rhs)? else {
        return Ok(UniquenessReport {
            equivalent: false,
            z_isomorphic,
            precondition_failures: Vec::new(),
        });
    };
    let kernel = system.nullspace();

    let eval = |coords: &Matrix| -> Result<bool> {
        let alpha: Vec<Scalar> = (0..ni).map(|k| coords.at(k, 0).clone()).collect();
        let beta: Vec<Scalar> = (0..nj).map(|k| coords.at(ni + k, 0).clone()).collect();
        let i_map = hi.element(&alpha);
        let j_map = hj.element(&beta);
        Ok(i_map.is_invertible() && j_map.is_invertible())
    };

    if eval(&particular)? {
        return Ok(UniquenessReport {
            equivalent: true,
            z_isomorphic,
            precondition_failures: Vec::new(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(UNIQ_SEED);
    let attempts = 8 + 2 * (c1.z.dim() + c1.m.dim()) * kernel.len().max(1);
    for attempt in 0..attempts {
        let mut cand = particular.clone();
        for (kidx, kv) in kernel.iter().enumerate() {
            let coeff = if attempt < 8 {
                field.from_i64(rng.gen_range(-2..=2))
            } else {
                // Moment-curve style deterministic points.
                let t = (attempt - 7) as i64;
                field.from_i64(t.pow((kidx as u32).min(12)))
            };
            cand = cand.add(&kv.scale(&coeff))?;
        }
        if eval(&cand)? {
            return Ok(UniquenessReport {
                equivalent: true,
                z_isomorphic,
                precondition_failures: Vec::new(),
            });
        }
    }
    Ok(UniquenessReport {
        equivalent: false,
        z_isomorphic,
        precondition_failures: Vec::new(),
    })
}
