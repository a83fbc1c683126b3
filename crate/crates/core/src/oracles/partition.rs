use std::sync::Arc;

use crate::algmod::{AlgebraPresentation, ModulePoint};
use crate::exactfield::{FieldSpec, Matrix};

/// A partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    /// All partitions of `n`, in lexicographically decreasing order.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition {
                    parts: prefix.clone(),
                });
                return;
            }
            for p in (1..=max.min(n)).rev() {
                prefix.push(p);
                rec(n - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

/// The classical intertwiner count for nilpotent matrices with Jordan
/// types `lambda` and `mu`: `sum_{i,j} min(lambda_i, mu_j)`.
pub fn partition_hom(lambda: &Partition, mu: &Partition) -> usize {
    lambda
        .parts
        .iter()
        .map(|&a| mu.parts.iter().map(|&b| a.min(b)).sum::<usize>())
        .sum()
}

/// The module point of a single nilpotent matrix in Jordan form with block
/// sizes `lambda` (ones on the superdiagonal of each block), over the free
/// algebra on one generator.
pub fn jordan_module(lambda: &Partition, field: FieldSpec) -> ModulePoint {
    let d = lambda.sum();
    let mut mat = Matrix::zero(field, d, d);
    let mut off = 0;
    for &part in &lambda.parts {
        for i in 0..part.saturating_sub(1) {
            mat.set(off + i, off + i + 1, field.one());
        }
        off += part;
    }
    let alg = Arc::new(AlgebraPresentation::free(field, 1));
    ModulePoint::new(alg, d, vec![mat]).expect("Jordan matrices have the right shape")
}
