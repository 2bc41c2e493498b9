//! The center of the group ring as an explicit based algebra on the class
//! sums `𝒞_1 = 1, 𝒞_2, …, 𝒞_h`.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::cyclotomic::CycNum;
use crate::group::{ClassPartition, FiniteGroup, SubgroupSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("subset is not a union of conjugacy classes")]
    NotClassClosed,
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Which class member plays `g_k` when counting `c_ijk`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepChoice {
    Minimal,
    Maximal,
}

#[derive(Debug, Clone)]
pub struct ClassAlgebra {
    id: u64,
    order: usize,
    h: usize,
    sizes: Vec<usize>,
    /// `c[(i*h + j)*h + k]`.
    constants: Vec<BigInt>,
    inverse: Vec<usize>,
    conductor: u32,
    partition: ClassPartition,
}

/// An element of the center, coefficients on the class-sum basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralElement {
    algebra_id: u64,
    coeffs: Vec<CycNum>,
}

impl CentralElement {
    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &CycNum {
        &self.coeffs[i]
    }

    pub fn algebra_id(&self) -> u64 {
        self.algebra_id
    }
}

impl ClassAlgebra {
    /// `c_ijk = #{x ∈ 𝒞_i : x^{-1} g_k ∈ 𝒞_j}` with `g_k` the minimal
    /// element of class `k`.
    pub fn new(group: &FiniteGroup, partition: &ClassPartition) -> Self {
        Self::with_representatives(group, partition, RepChoice::Minimal)
    }

    pub fn with_representatives(group: &FiniteGroup, partition: &ClassPartition, choice: RepChoice) -> Self {
        let h = partition.count();
        let mut constants = vec![BigInt::zero(); h * h * h];
        let mut counts = vec![0u64; h];
        for k in 0..h {
            let class_k = partition.class(k);
            let gk = match choice {
                RepChoice::Minimal => class_k[0],
                RepChoice::Maximal => *class_k.last().expect("nonempty class"),
            };
            for i in 0..h {
                counts.fill(0);
                for &x in partition.class(i) {
                    counts[partition.class_of(group.mul(group.inv(x), gk))] += 1;
                }
                for (j, &c) in counts.iter().enumerate() {
                    if c != 0 {
                        constants[(i * h + j) * h + k] = BigInt::from(c);
                    }
                }
            }
        }
        ClassAlgebra {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            order: group.order(),
            h,
            sizes: partition.sizes(),
            constants,
            inverse: (0..h).map(|i| partition.inverse_class(i)).collect(),
            conductor: group.exponent(),
            partition: partition.clone(),
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn dim(&self) -> usize {
        self.h
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, i: usize) -> usize {
        self.sizes[i]
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn partition(&self) -> &ClassPartition {
        &self.partition
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> &BigInt {
        &self.constants[(i * self.h + j) * self.h + k]
    }

    /// `i ↦ i∘`.
    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn element(&self, coeffs: Vec<CycNum>) -> CentralElement {
        assert_eq!(coeffs.len(), self.h, "coefficient count must equal h");
        CentralElement {
            algebra_id: self.id,
            coeffs,
        }
    }

    pub fn zero(&self) -> CentralElement {
        self.element(vec![CycNum::zero(self.conductor); self.h])
    }

    pub fn unit(&self) -> CentralElement {
        self.class_sum(0)
    }

    pub fn class_sum(&self, i: usize) -> CentralElement {
        let mut e = self.zero();
        e.coeffs[i] = CycNum::one(self.conductor);
        e
    }

    fn owns(&self, x: &CentralElement) {
        assert_eq!(x.algebra_id, self.id, "element belongs to another algebra");
    }

    pub fn add(&self, x: &CentralElement, y: &CentralElement) -> CentralElement {
        self.owns(x);
        self.owns(y);
        self.element(x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, x: &CentralElement, s: &CycNum) -> CentralElement {
        self.owns(x);
        self.element(x.coeffs.iter().map(|a| a * s).collect())
    }

    /// Bilinear extension of `𝒞_i 𝒞_j = Σ_k c_ijk 𝒞_k`.
    pub fn multiply(&self, x: &CentralElement, y: &CentralElement) -> CentralElement {
        self.owns(x);
        self.owns(y);
        let mut out = vec![CycNum::zero(self.conductor); self.h];
        for (i, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *slot = &*slot + &ab.mul_int(c.clone());
                    }
                }
            }
        }
        self.element(out)
    }

    /// `ε(x) = Σ_i x_i |𝒞_i|`.
    pub fn augmentation(&self, x: &CentralElement) -> CycNum {
        self.owns(x);
        x.coeffs
            .iter()
            .zip(&self.sizes)
            .fold(CycNum::zero(self.conductor), |acc, (a, &s)| &acc + &a.mul_int(s))
    }

    /// `ε₁(x)`, the coefficient of the identity.
    pub fn trace1(&self, x: &CentralElement) -> CycNum {
        self.owns(x);
        x.coeffs[0].clone()
    }

    /// `(Σ a_g g)∘ = Σ conj(a_g) g^{-1}`.
    pub fn star(&self, x: &CentralElement) -> CentralElement {
        self.owns(x);
        self.element((0..self.h).map(|i| x.coeffs[self.inverse[i]].conj()).collect())
    }

    /// Classes contained in `subgroup`.
    pub fn support_in_subgroup(&self, subgroup: &SubgroupSet) -> Result<Vec<usize>, AlgebraError> {
        self.partition.support(subgroup).ok_or(AlgebraError::NotClassClosed)
    }

    /// `N̂`, the sum of the elements of a normal subgroup.
    pub fn subgroup_sum(&self, subgroup: &SubgroupSet) -> Result<CentralElement, AlgebraError> {
        let support = self.support_in_subgroup(subgroup)?;
        let mut e = self.zero();
        for i in support {
            e.coeffs[i] = CycNum::one(self.conductor);
        }
        Ok(e)
    }

    /// Matrix of the natural projection `Z(G) → Z(G/N)` in class-sum bases:
    /// entry `(i, k)` counts the elements of `𝒞_i` landing on the
    /// representative of quotient class `k`.
    pub fn quotient_map(&self, projection: &[usize], quotient: &ClassAlgebra) -> Vec<Vec<i64>> {
        let qp = quotient.partition();
        (0..self.h)
            .map(|i| {
                let mut row = vec![0i64; quotient.dim()];
                for &g in self.partition.class(i) {
                    let img = projection[g];
                    let k = qp.class_of(img);
                    if qp.representative(k) == img {
                        row[k] += 1;
                    }
                }
                row
            })
            .collect()
    }

    /// Applies a coefficient matrix `M` (rows = images of the basis of this
    /// algebra) to `x`, producing coefficients in the target basis.
    pub fn apply_matrix(x: &[CycNum], matrix: &[Vec<CycNum>], conductor: u32) -> Vec<CycNum> {
        let cols = matrix.first().map_or(0, Vec::len);
        let mut out = vec![CycNum::zero(conductor); cols];
        for (a, row) in x.iter().zip(matrix) {
            if a.is_zero() {
                continue;
            }
            for (slot, m) in out.iter_mut().zip(row) {
                if !m.is_zero() {
                    *slot = &*slot + &(a * m);
                }
            }
        }
        out
    }

    /// True when the linear map with the given rows is multiplicative from
    /// this algebra to `target`: `ψ(𝒞_i)ψ(𝒞_j) = Σ_k c_ijk ψ(𝒞_k)`.
    pub fn is_homomorphism(&self, rows: &[Vec<CycNum>], target: &ClassAlgebra) -> bool {
        let conductor = rows
            .iter()
            .flatten()
            .fold(target.conductor, |m, v| crate::cyclotomic::lcm_u32(m, v.conductor()));
        let images: Vec<CentralElement> = rows
            .iter()
            .map(|r| target.element(r.iter().map(|v| v.embed(conductor)).collect()))
            .collect();
        for i in 0..self.h {
            for j in i..self.h {
                let lhs = target.multiply(&images[i], &images[j]);
                let mut rhs = vec![CycNum::zero(conductor); target.dim()];
                for (k, img) in images.iter().enumerate() {
                    let c = self.c(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    for (slot, v) in rhs.iter_mut().zip(&img.coeffs) {
                        *slot = &*slot + &v.mul_int(c.clone());
                    }
                }
                if lhs.coeffs != rhs {
                    return false;
                }
            }
        }
        true
    }
}
