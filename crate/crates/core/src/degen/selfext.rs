use crate::algmod::{
    hom_basis, hom_dim, is_module_hom, is_split_indecomposable, IndecVerdict, ModulePoint,
};
use crate::exactfield::{FieldSpec, Matrix};
use crate::{Error, Result};

use super::{check_exact, check_split, ShortExactCandidate};

/// A self-extension datum: modules `Z`, `Y` of equal dimension and maps
/// making `0 -> Z -(f~; g~)-> Z (+) Y -(f~, -h~)-> Z -> 0` exact.
/// Exactness forces `f~^2 = h~ g~`.
#[derive(Clone, Debug)]
pub struct SelfExtensionDatum {
    pub z: ModulePoint,
    pub y: ModulePoint,
    pub ftilde: Matrix,
    pub gtilde: Matrix,
    pub htilde: Matrix,
}

impl SelfExtensionDatum {
    pub fn new(
        z: ModulePoint,
        y: ModulePoint,
        ftilde: Matrix,
        gtilde: Matrix,
        htilde: Matrix,
    ) -> Result<Self> {
        if !z.same_algebra(&y) {
            return Err(Error::AlgebraMismatch);
        }
        if z.dim() != y.dim() {
            return Err(Error::ShapeMismatch(format!(
                "Y has dimension {} but Z has dimension {}",
                y.dim(),
                z.dim()
            )));
        }
        let dz = z.dim();
        for (name, mat, rows, cols) in [
            ("ftilde", &ftilde, dz, dz),
            ("gtilde", &gtilde, dz, dz),
            ("htilde", &htilde, dz, dz),
        ] {
            if mat.rows() != rows || mat.cols() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "{name} is {}x{}, expected {rows}x{cols}",
                    mat.rows(),
                    mat.cols()
                )));
            }
        }
        Ok(SelfExtensionDatum {
            z,
            y,
            ftilde,
            gtilde,
            htilde,
        })
    }

    /// The underlying short exact candidate with middle `Z (+) Y`.
    pub fn to_sequence(&self) -> Result<ShortExactCandidate> {
        let middle = self.z.direct_sum(&self.y)?;
        let f = Matrix::vstack(&[&self.ftilde, &self.gtilde])?;
        let g = Matrix::hstack(&[&self.ftilde, &self.htilde.neg()])?;
        ShortExactCandidate::new(self.z.clone(), middle, self.z.clone(), f, g)
    }
}

/// The endomorphism pair `x = g~ h~`, `y = g~ f~ h~` of `Y` extracted from
/// an exact datum; verifies `x y = y x` and `x^3 = y^2`.
pub fn endo_pair(s: &SelfExtensionDatum) -> Result<(Matrix, Matrix)> {
    let report = check_exact(&s.to_sequence()?)?;
    if !report.pass {
        return Err(Error::Precondition(format!(
            "endoPair requires an exact datum: {:?}",
            report.failures
        )));
    }
    let x = s.gtilde.mul(&s.htilde)?;
    let y = s.gtilde.mul(&s.ftilde)?.mul(&s.htilde)?;
    if !is_module_hom(&x, &s.y, &s.y)? || !is_module_hom(&y, &s.y, &s.y)? {
        return Err(Error::Internal("x or y is not an endomorphism of Y".into()));
    }
    if x.mul(&y)? != y.mul(&x)? {
        return Err(Error::Internal("xy differs from yx on an exact datum".into()));
    }
    if x.pow(3)? != y.pow(2)? {
        return Err(Error::Internal("x^3 differs from y^2 on an exact datum".into()));
    }
    Ok((x, y))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapStatus {
    Pass,
    TheoremViolation,
    PreconditionFailure,
}

/// The endomorphism-gap report: under the preconditions (exact, nonsplit,
/// `Z` indecomposable) the gap `[Z,Z] - [Y,Y]` must be at least 2.
#[derive(Clone, Debug)]
pub struct GapReport {
    pub status: GapStatus,
    pub gap: i64,
    pub hom_yy: usize,
    pub hom_yz: usize,
    pub hom_zy: usize,
    pub hom_zz: usize,
    pub precondition_failures: Vec<String>,
}

/// Over a prime field, indecomposability is decided by exhaustive
/// idempotent search in `End(Z)` coordinates; only feasible for small
/// `[Z,Z]`.
fn fp_is_indecomposable(z: &ModulePoint, p: u32) -> Result<Option<bool>> {
    let end = hom_basis(z, z)?;
    let n = end.dim();
    if n > 3 || (p as u64).pow(n as u32) > 1_000_000 {
        return Ok(None);
    }
    let field = z.field();
    let d = z.dim();
    let identity = Matrix::identity(field, d);
    let mut coords = vec![0u32; n];
    loop {
        let scalars: Vec<_> = coords.iter().map(|&c| field.from_i64(c as i64)).collect();
        let e = end.element(&scalars);
        if !e.is_zero() && e != identity && e.mul(&e)? == e {
            return Ok(Some(false));
        }
        // Odometer increment over F_p^n.
        let mut done = true;
        for c in coords.iter_mut() {
            *c += 1;
            if *c < p {
                done = false;
                break;
            }
            *c = 0;
        }
        if done {
            return Ok(Some(true));
        }
    }
}

/// Checks the endomorphism-gap bound on a self-extension datum.
pub fn theorem2_gap(s: &SelfExtensionDatum) -> Result<GapReport> {
    let mut pre = Vec::new();
    let seq = s.to_sequence()?;
    let exact = check_exact(&seq)?;
    if !exact.pass {
        for f in &exact.failures {
            pre.push(format!("not exact: {f}"));
        }
    }
    if exact.pass && check_split(&seq)? {
        pre.push("sequence splits".into());
    }
    if exact.pass {
        match s.z.field() {
            FieldSpec::Rational => match is_split_indecomposable(&s.z)? {
                IndecVerdict::Yes => {}
                IndecVerdict::No => pre.push("Z is not indecomposable".into()),
                IndecVerdict::Inconclusive => {
                    pre.push("Z indecomposability inconclusive over the ground field".into())
                }
            },
            FieldSpec::Prime(p) => match fp_is_indecomposable(&s.z, p)? {
                Some(true) => {}
                Some(false) => pre.push("Z is not indecomposable".into()),
                None => pre.push(
                    "Z indecomposability not decidable by bounded idempotent search".into(),
                ),
            },
        }
    }

    let hom_yy = hom_dim(&s.y, &s.y)?;
    let hom_yz = hom_dim(&s.y, &s.z)?;
    let hom_zy = hom_dim(&s.z, &s.y)?;
    let hom_zz = hom_dim(&s.z, &s.z)?;
    let gap = hom_zz as i64 - hom_yy as i64;

    let status = if !pre.is_empty() {
        GapStatus::PreconditionFailure
    } else if gap >= 2 {
        GapStatus::Pass
    } else {
        GapStatus::TheoremViolation
    };
    Ok(GapReport {
        status,
        gap,
        hom_yy,
        hom_yz,
        hom_zy,
        hom_zz,
        precondition_failures: pre,
    })
}
