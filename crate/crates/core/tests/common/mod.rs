//! Shared fixtures and generators for the integration suites: the
//! commutative-square example modules, the Kronecker scenario, an
//! independent Hom-dimension oracle, and seeded random generators.

#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use modvar::algmod::{AlgebraPresentation, ModulePoint, NcPoly};
use modvar::cusp::{CuspBimodule, CuspModule, Side};
use modvar::degen::{DegenerationCertificate, SelfExtensionDatum};
use modvar::exactfield::{FieldSpec, Matrix, Scalar};

pub const Q: FieldSpec = FieldSpec::Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------
// The dimension-4 pair over k[x, y]/(x^2, y^2) with endomorphism gap 2.
// ---------------------------------------------------------------------

/// The algebra `k[x, y]/(x^2, y^2)`.
pub fn gap_algebra(field: FieldSpec) -> Arc<AlgebraPresentation> {
    Arc::new(AlgebraPresentation::two_dual_numbers(field))
}

pub fn gap_shared_alpha(field: FieldSpec) -> Matrix {
    Matrix::from_i64(
        field,
        &[&[0, 0, 0, 0], &[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0]],
    )
}

pub fn gap_module_y(field: FieldSpec) -> ModulePoint {
    let beta = Matrix::from_i64(
        field,
        &[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0]],
    );
    ModulePoint::new(gap_algebra(field), 4, vec![gap_shared_alpha(field), beta]).unwrap()
}

pub fn gap_module_z(field: FieldSpec) -> ModulePoint {
    let beta = Matrix::from_i64(
        field,
        &[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[1, 0, 0, 0]],
    );
    ModulePoint::new(gap_algebra(field), 4, vec![gap_shared_alpha(field), beta]).unwrap()
}

pub fn gap_ftilde(field: FieldSpec) -> Matrix {
    Matrix::from_i64(
        field,
        &[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]],
    )
}

pub fn gap_gtilde(field: FieldSpec) -> Matrix {
    Matrix::from_i64(
        field,
        &[&[0, 0, 0, 0], &[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1]],
    )
}

pub fn gap_htilde(field: FieldSpec) -> Matrix {
    Matrix::from_i64(
        field,
        &[&[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0]],
    )
}

pub fn gap_datum(field: FieldSpec) -> SelfExtensionDatum {
    SelfExtensionDatum::new(
        gap_module_z(field),
        gap_module_y(field),
        gap_ftilde(field),
        gap_gtilde(field),
        gap_htilde(field),
    )
    .unwrap()
}

// ---------------------------------------------------------------------
// Kronecker scenario.
// ---------------------------------------------------------------------

/// The Kronecker path-algebra presentation: two vertex idempotents and two
/// arrows from vertex 1 to vertex 2 (generators `e1, e2, a, b`).
pub fn kronecker_algebra(field: FieldSpec) -> Arc<AlgebraPresentation> {
    let one = field.one();
    let minus = field.from_i64(-1);
    let poly = |terms: Vec<(Scalar, Vec<usize>)>| NcPoly { terms };
    let relations = vec![
        poly(vec![(one.clone(), vec![0, 0]), (minus.clone(), vec![0])]),
        poly(vec![(one.clone(), vec![1, 1]), (minus.clone(), vec![1])]),
        poly(vec![(one.clone(), vec![0, 1])]),
        poly(vec![(one.clone(), vec![1, 0])]),
        poly(vec![
            (one.clone(), vec![0]),
            (one.clone(), vec![1]),
            (minus.clone(), vec![]),
        ]),
        poly(vec![(one.clone(), vec![2]), (minus.clone(), vec![2, 0])]),
        poly(vec![(one.clone(), vec![2]), (minus.clone(), vec![1, 2])]),
        poly(vec![(one.clone(), vec![3]), (minus.clone(), vec![3, 0])]),
        poly(vec![(one, vec![3]), (minus, vec![1, 3])]),
    ];
    Arc::new(AlgebraPresentation::new(field, 4, relations).unwrap())
}

/// The indecomposable representation `k -(1, 0)-> k` of the Kronecker
/// quiver: `(E11, E22, E21, 0)`.
pub fn kronecker_m(field: FieldSpec) -> ModulePoint {
    ModulePoint::new(
        kronecker_algebra(field),
        2,
        vec![
            Matrix::from_i64(field, &[&[1, 0], &[0, 0]]),
            Matrix::from_i64(field, &[&[0, 0], &[0, 1]]),
            Matrix::from_i64(field, &[&[0, 0], &[1, 0]]),
            Matrix::zero(field, 2, 2),
        ],
    )
    .unwrap()
}

/// The semisimple degeneration `S1 (+) S2`: `(E11, E22, 0, 0)`.
pub fn kronecker_n(field: FieldSpec) -> ModulePoint {
    ModulePoint::new(
        kronecker_algebra(field),
        2,
        vec![
            Matrix::from_i64(field, &[&[1, 0], &[0, 0]]),
            Matrix::from_i64(field, &[&[0, 0], &[0, 1]]),
            Matrix::zero(field, 2, 2),
            Matrix::zero(field, 2, 2),
        ],
    )
    .unwrap()
}

/// The invariant line `span(e2)` of `kronecker_m`, whose filtration
/// certificate has `Z = S2` and `N = S2 (+) S1`.
pub fn kronecker_socle(field: FieldSpec) -> Matrix {
    Matrix::from_i64(field, &[&[0], &[1]])
}

pub fn kronecker_certificate(field: FieldSpec) -> DegenerationCertificate {
    modvar::degen::certificate_from_submodule(&kronecker_m(field), &kronecker_socle(field))
        .unwrap()
}

// ---------------------------------------------------------------------
// Independent Hom-dimension oracle.
// ---------------------------------------------------------------------

fn scalar_to_rational(s: &Scalar) -> BigRational {
    match s {
        Scalar::Rat(r) => r.clone(),
        Scalar::Fp(_) => panic!("oracle works over the rationals"),
    }
}

/// Row rank by plain forward elimination on `BigRational` rows; written
/// independently of the library kernel (different pivot order, no echelon
/// normalization).
fn oracle_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        // Scan from the bottom for a pivot, unlike the library kernel.
        let pivot = (rank..rows.len()).rev().find(|&r| !rows[r][c].is_zero());
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][c].recip();
        for r in (rank + 1)..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            let factor = &rows[r][c] * &inv;
            for k in c..cols {
                let sub = &factor * &rows[rank][k];
                rows[r][k] = &rows[r][k] - sub;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Brute-force `dim Hom(m, n)` with column-major vectorization and a
/// different equation ordering than the library path.
pub fn oracle_hom_dim(m: &ModulePoint, n: &ModulePoint) -> usize {
    let (dm, dn) = (m.dim(), n.dim());
    let t = m.mats().len();
    let unknowns = dm * dn;
    if unknowns == 0 {
        return 0;
    }
    let mut rows = Vec::new();
    for b in 0..dm {
        for a in 0..dn {
            for i in 0..t {
                // Entry (a, b) of phi * M_i - N_i * phi, unknown phi(r, c)
                // at column c * dn + r.
                let mut row = vec![BigRational::from_integer(BigInt::from(0)); unknowns];
                for k in 0..dm {
                    let col = k * dn + a;
                    row[col] += scalar_to_rational(m.mats()[i].at(k, b));
                }
                for k in 0..dn {
                    let col = b * dn + k;
                    row[col] -= scalar_to_rational(n.mats()[i].at(a, k));
                }
                rows.push(row);
            }
        }
    }
    unknowns - oracle_rank(rows)
}

// ---------------------------------------------------------------------
// Random generators (all seeded, all deterministic).
// ---------------------------------------------------------------------

pub fn random_matrix(
    rng: &mut ChaCha8Rng,
    field: FieldSpec,
    rows: usize,
    cols: usize,
) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| field.from_i64(rng.gen_range(-1..=1)))
}

/// Random invertible matrix as a product of elementary transvections and
/// sign flips; the inverse is exact by construction.
pub fn random_invertible(rng: &mut ChaCha8Rng, field: FieldSpec, n: usize) -> Matrix {
    let mut g = Matrix::identity(field, n);
    if n < 2 {
        return g;
    }
    for _ in 0..(2 * n) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let c = field.from_i64(rng.gen_range(-1..=1i64));
        let mut e = Matrix::identity(field, n);
        // e = I + c E_ij.
        let updated = field.add(e.at(i, j), &c);
        e = Matrix::from_fn(field, n, n, |r, s| {
            if (r, s) == (i, j) {
                updated.clone()
            } else {
                e.at(r, s).clone()
            }
        });
        g = g.mul(&e).unwrap();
    }
    g
}

/// Random module over the free algebra on `t` generators.
pub fn random_module(
    rng: &mut ChaCha8Rng,
    alg: &Arc<AlgebraPresentation>,
    d: usize,
) -> ModulePoint {
    let field = alg.field();
    let mats = (0..alg.generators())
        .map(|_| random_matrix(rng, field, d, d))
        .collect();
    ModulePoint::new(Arc::clone(alg), d, mats).unwrap()
}

/// Random upper-triangular module over the free algebra: the leading
/// coordinate flags are invariant subspaces by construction.
pub fn random_triangular_module(
    rng: &mut ChaCha8Rng,
    alg: &Arc<AlgebraPresentation>,
    d: usize,
) -> ModulePoint {
    let field = alg.field();
    let mats = (0..alg.generators())
        .map(|_| {
            Matrix::from_fn(field, d, d, |r, c| {
                if c >= r {
                    field.from_i64(rng.gen_range(-1..=1))
                } else {
                    field.zero()
                }
            })
        })
        .collect();
    ModulePoint::new(Arc::clone(alg), d, mats).unwrap()
}

/// The smallest invariant subspace containing a random vector.
pub fn random_cyclic_subspace(rng: &mut ChaCha8Rng, m: &ModulePoint) -> Matrix {
    let field = m.field();
    let d = m.dim();
    let v = random_matrix(rng, field, d, 1);
    let mut span = if v.is_zero() {
        Matrix::zero(field, d, 0)
    } else {
        v
    };
    loop {
        let mut grew = false;
        for mat in m.mats() {
            if span.cols() == 0 {
                break;
            }
            let image = mat.mul(&span).unwrap();
            for c in 0..image.cols() {
                let col = image.column(c);
                let trial = Matrix::hstack(&[&span, &col]).unwrap();
                if trial.rank() > span.cols() {
                    span = trial;
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    // Canonicalize the basis.
    span.transpose().rref().0.transpose().take_columns(
        &(0..span.cols()).collect::<Vec<_>>(),
    )
}

/// Random valid cusp module: direct sums of principal truncations, simple
/// modules and restrictions of nilpotent `k[m]`-modules, conjugated.
pub fn random_cusp_module(rng: &mut ChaCha8Rng, field: FieldSpec, side: Side) -> CuspModule {
    let blocks = rng.gen_range(1..=2);
    let mut acc: Option<CuspModule> = None;
    for _ in 0..blocks {
        let block = match rng.gen_range(0..4) {
            0 => CuspModule::truncation(rng.gen_range(2..=4), field, side),
            1 => CuspModule::simple(field, side),
            2 => {
                let s = rng.gen_range(1..=3);
                let jordan = Matrix::from_fn(field, s, s, |r, c| {
                    if c == r + 1 {
                        field.one()
                    } else {
                        field.zero()
                    }
                });
                CuspModule::from_nilpotent(&jordan, side).unwrap()
            }
            _ => {
                let s = rng.gen_range(1..=2);
                let c = random_matrix(rng, field, s, s);
                CuspModule::from_nilpotent(&c, side).unwrap()
            }
        };
        acc = Some(match acc {
            None => block,
            Some(prev) => prev.direct_sum(&block).unwrap(),
        });
    }
    let m = acc.unwrap();
    let g = random_invertible(rng, field, m.dim());
    m.conjugate(&g).unwrap()
}

/// Random valid cusp bimodule: an outer tensor of two random one-sided
/// modules, conjugated by a common base change.
pub fn random_cusp_bimodule(rng: &mut ChaCha8Rng, field: FieldSpec) -> CuspBimodule {
    let left = loop {
        let m = random_cusp_module(rng, field, Side::Left);
        if m.dim() > 0 && m.dim() <= 4 {
            break m;
        }
    };
    let right = loop {
        let m = random_cusp_module(rng, field, Side::Right);
        if m.dim() > 0 && m.dim() <= 3 {
            break m;
        }
    };
    let b = CuspBimodule::tensor(&left, &right).unwrap();
    let g = random_invertible(rng, field, b.dim());
    b.conjugate(&g).unwrap()
}

/// The smallest subspace containing a random vector and invariant under
/// all four bimodule actions, returned as an embedding matrix.
pub fn random_bimodule_subspace(rng: &mut ChaCha8Rng, b: &CuspBimodule) -> Matrix {
    let field = b.field();
    let d = b.dim();
    let v = random_matrix(rng, field, d, 1);
    let mut span = if v.is_zero() {
        Matrix::zero(field, d, 0)
    } else {
        v
    };
    let actions = [b.left_m2(), b.left_m3(), b.right_m2(), b.right_m3()];
    loop {
        let mut grew = false;
        for act in actions {
            if span.cols() == 0 {
                break;
            }
            let image = act.mul(&span).unwrap();
            for c in 0..image.cols() {
                let col = image.column(c);
                let trial = Matrix::hstack(&[&span, &col]).unwrap();
                if trial.rank() > span.cols() {
                    span = trial;
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    span.transpose().rref().0.transpose().take_columns(
        &(0..span.cols()).collect::<Vec<_>>(),
    )
}

/// Restriction of a bimodule to an invariant subspace.
pub fn restrict_bimodule(b: &CuspBimodule, embed: &Matrix) -> CuspBimodule {
    let acts: Vec<Matrix> = [b.left_m2(), b.left_m3(), b.right_m2(), b.right_m3()]
        .iter()
        .map(|act| {
            let image = act.mul(embed).unwrap();
            embed.solve(&image).unwrap().expect("subspace invariant")
        })
        .collect();
    CuspBimodule::new(acts[0].clone(), acts[1].clone(), acts[2].clone(), acts[3].clone())
        .unwrap()
}
