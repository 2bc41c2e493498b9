//! Exact ordinary character tables via Dixon's modular variant of the
//! Burnside method, and the block idempotents they determine.
//!
//! The class matrices `(M_i)_{jk} = c_ijk` commute and are simultaneously
//! diagonalizable; their common eigenvectors, normalized at the identity
//! class, are the central characters `ω(𝒞_i) = |𝒞_i| χ(g_i) / χ(1)`. Working
//! over `F_p` with `p ≡ 1 (mod exp G)` and `p > 2√|G|` makes the reduction
//! injective on character values, which are then lifted back to `Q(ζ_N)` by
//! the discrete Fourier inversion along the power map.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::class_algebra::{CentralElement, ClassAlgebra};
use crate::cyclotomic::CycNum;
use crate::group::ClassPartition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("simultaneous eigenspaces failed to split: {0}")]
    InternalSplitFailure(String),
    #[error("character table axiom violated: {0}")]
    AxiomViolated(String),
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    values: Vec<Vec<CycNum>>,
    degrees: Vec<u64>,
    conductor: u32,
    order: usize,
    sizes: Vec<usize>,
    inverse: Vec<usize>,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverting zero mod {p}");
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Least prime `p ≡ 1 (mod conductor)` with `p > 2√order`.
pub fn dixon_prime(conductor: u32, order: usize) -> u64 {
    let n = conductor as u64;
    let mut p = n + 1;
    loop {
        if p * p > 4 * order as u64 && is_prime(p) {
            return p;
        }
        p += n;
    }
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .unwrap_or(1)
}

/// Null space of a `rows × cols` matrix over `F_p` (vectors of length `cols`).
fn null_space(mut m: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for k in 0..cols {
                    m[i][k] = (m[i][k] + p - f * m[r][k] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[row][f]) % p;
            }
            v
        })
        .collect()
}

impl CharacterTable {
    /// Computes the table of the group underlying `algebra`.
    pub fn compute(algebra: &ClassAlgebra) -> Result<Self, TableError> {
        let h = algebra.dim();
        let n = algebra.group_order();
        let conductor = algebra.conductor();
        let p = dixon_prime(conductor, n);
        let z = pow_mod(primitive_root(p), (p - 1) / conductor as u64, p);
        let cm = |i: usize, j: usize, k: usize| -> u64 {
            (algebra.c(i, j, k) % BigInt::from(p))
                .to_u64()
                .expect("reduced constant fits")
        };

        // Each space is a list of basis vectors; split by M_2, …, M_h in turn.
        let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..h)
            .map(|t| {
                let mut v = vec![0u64; h];
                v[t] = 1;
                v
            })
            .collect()];
        for i in 1..h {
            if spaces.iter().all(|s| s.len() == 1) {
                break;
            }
            let mat: Vec<Vec<u64>> = (0..h).map(|j| (0..h).map(|k| cm(i, j, k)).collect()).collect();
            let mut next = Vec::with_capacity(h);
            for basis in spaces {
                if basis.len() == 1 {
                    next.push(basis);
                    continue;
                }
                let images: Vec<Vec<u64>> = basis
                    .iter()
                    .map(|v| {
                        (0..h)
                            .map(|j| (0..h).fold(0, |acc, k| (acc + mat[j][k] * v[k]) % p))
                            .collect()
                    })
                    .collect();
                let mut found = 0;
                for lambda in 0..p {
                    // columns u_t = M v_t - λ v_t; solve Σ y_t u_t = 0
                    let u: Vec<Vec<u64>> = (0..h)
                        .map(|j| {
                            (0..basis.len())
                                .map(|t| (images[t][j] + p - lambda * basis[t][j] % p) % p)
                                .collect()
                        })
                        .collect();
                    let ys = null_space(u, basis.len(), p);
                    if ys.is_empty() {
                        continue;
                    }
                    found += ys.len();
                    next.push(
                        ys.iter()
                            .map(|y| {
                                (0..h)
                                    .map(|j| y.iter().zip(&basis).fold(0, |acc, (yt, vt)| (acc + yt * vt[j]) % p))
                                    .collect()
                            })
                            .collect(),
                    );
                    if found == basis.len() {
                        break;
                    }
                }
                if found != basis.len() {
                    return Err(TableError::InternalSplitFailure(format!(
                        "class matrix {i} is not diagonalizable on a {}-dimensional space mod {p}",
                        basis.len()
                    )));
                }
            }
            spaces = next;
        }
        if spaces.len() != h {
            return Err(TableError::InternalSplitFailure(format!(
                "{} common eigenspaces for {h} classes mod {p}",
                spaces.len()
            )));
        }

        let sizes = algebra.sizes().to_vec();
        let partition = algebra.partition();
        let sqrt_n = (1..).take_while(|d: &u64| d * d <= n as u64).last().unwrap_or(1);
        let mut rows = Vec::with_capacity(h);
        let mut degrees = Vec::with_capacity(h);
        for space in &spaces {
            let w = &space[0];
            if w[0] == 0 {
                return Err(TableError::InternalSplitFailure(
                    "eigenvector vanishes at the identity class".into(),
                ));
            }
            let s = inv_mod(w[0], p);
            let omega: Vec<u64> = w.iter().map(|x| x * s % p).collect();
            let norm = (0..h).fold(0, |acc, i| {
                let t = omega[i] * omega[algebra.inverse_class(i)] % p;
                (acc + t * inv_mod(sizes[i] as u64 % p, p)) % p
            });
            if norm == 0 {
                return Err(TableError::InternalSplitFailure("degenerate central character".into()));
            }
            let target = (n as u64 % p) * inv_mod(norm, p) % p;
            let degree = (1..=sqrt_n)
                .find(|d| d * d % p == target)
                .ok_or_else(|| TableError::InternalSplitFailure("no admissible degree".into()))?;
            let chi_mod: Vec<u64> = (0..h)
                .map(|i| omega[i] * (degree % p) % p * inv_mod(sizes[i] as u64 % p, p) % p)
                .collect();
            let row = (0..h)
                .map(|i| lift_value(&chi_mod, partition, i, degree, conductor, z, p))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
            degrees.push(degree);
        }

        let mut order: Vec<usize> = (0..h).collect();
        let principal = |r: &Vec<CycNum>| r.iter().all(CycNum::is_one);
        order.sort_by(|&a, &b| {
            principal(&rows[b])
                .cmp(&principal(&rows[a]))
                .then(degrees[a].cmp(&degrees[b]))
                .then_with(|| lex(&rows[a], &rows[b]))
        });
        let values = order.iter().map(|&r| rows[r].clone()).collect();
        let degrees = order.iter().map(|&r| degrees[r]).collect();
        Ok(CharacterTable {
            values,
            degrees,
            conductor,
            order: n,
            sizes,
            inverse: (0..h).map(|i| algebra.inverse_class(i)).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Vec<CycNum>] {
        &self.values
    }

    pub fn value(&self, l: usize, i: usize) -> &CycNum {
        &self.values[l][i]
    }

    pub fn row(&self, l: usize) -> &[CycNum] {
        &self.values[l]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, l: usize) -> u64 {
        self.degrees[l]
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `χ_l(g_i^{-1})`.
    pub fn value_at_inverse(&self, l: usize, i: usize) -> &CycNum {
        &self.values[l][self.inverse[i]]
    }

    /// Rows of degree one.
    pub fn linear_character_rows(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&l| self.degrees[l] == 1).collect()
    }

    /// `e_l = (χ_l(1)/|G|) Σ_i χ_l(g_i^{-1}) 𝒞_i`.
    pub fn block_idempotent(&self, algebra: &ClassAlgebra, l: usize) -> CentralElement {
        let scale_num = BigInt::from(self.degrees[l]);
        let scale_den = BigInt::from(self.order);
        algebra.element(
            (0..self.dim())
                .map(|i| self.value_at_inverse(l, i).scale(&scale_num, &scale_den))
                .collect(),
        )
    }

    /// Values re-expressed in a larger conductor.
    pub fn embedded(&self, conductor: u32) -> Vec<Vec<CycNum>> {
        self.values
            .iter()
            .map(|r| r.iter().map(|v| v.embed(conductor)).collect())
            .collect()
    }

    /// `|𝒞_i| χ_l(g_i) / χ_l(1)`, the central character on class sums.
    pub fn central_character(&self, l: usize, i: usize) -> CycNum {
        self.values[l][i].scale(&BigInt::from(self.sizes[i]), &BigInt::from(self.degrees[l]))
    }

    /// Checks the defining identities exactly: principal first row, both
    /// orthogonality relations, the degree equation and divisibility, and
    /// that every row is a homomorphism on the class algebra.
    pub fn check_axioms(&self, algebra: &ClassAlgebra) -> Result<(), TableError> {
        let h = self.dim();
        let n = self.order;
        let fail = |msg: String| Err(TableError::AxiomViolated(msg));
        if !self.values[0].iter().all(CycNum::is_one) {
            return fail("first row is not the principal character".into());
        }
        for l in 0..h {
            if self.values[l][0] != CycNum::from_int(1, self.degrees[l]) {
                return fail(format!("row {l}: identity column differs from the degree"));
            }
            if !(n as u64).is_multiple_of(self.degrees[l]) {
                return fail(format!("degree {} does not divide {n}", self.degrees[l]));
            }
        }
        let sum_sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != n as u64 {
            return fail(format!("sum of squared degrees {sum_sq} != {n}"));
        }
        let conj: Vec<Vec<CycNum>> = self
            .values
            .iter()
            .map(|r| r.iter().map(CycNum::conj).collect())
            .collect();
        for l in 0..h {
            for m in l..h {
                let mut s = CycNum::zero(self.conductor);
                for i in 0..h {
                    s = &s + &(&self.values[l][i] * &conj[m][i]).mul_int(self.sizes[i]);
                }
                let expect = CycNum::from_int(1, if l == m { n } else { 0 });
                if s != expect {
                    return fail(format!("first orthogonality fails for rows {l}, {m}"));
                }
            }
        }
        for i in 0..h {
            for j in i..h {
                let mut s = CycNum::zero(self.conductor);
                for l in 0..h {
                    s = &s + &(&self.values[l][i] * &conj[l][j]);
                }
                let expect = if i == j {
                    CycNum::from_int(1, n / self.sizes[i])
                } else {
                    CycNum::zero(1)
                };
                if s != expect {
                    return fail(format!("second orthogonality fails for columns {i}, {j}"));
                }
            }
        }
        for l in 0..h {
            let omega: Vec<CycNum> = (0..h).map(|i| self.central_character(l, i)).collect();
            for i in 0..h {
                for j in i..h {
                    let mut rhs = CycNum::zero(self.conductor);
                    for (k, w) in omega.iter().enumerate() {
                        let c = algebra.c(i, j, k);
                        if !c.is_zero() {
                            rhs = &rhs + &w.mul_int(c.clone());
                        }
                    }
                    if &omega[i] * &omega[j] != rhs {
                        return fail(format!("central character {l} is not multiplicative on ({i}, {j})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Applies `ζ ↦ ζ^t` to every entry and the column permutation
    /// `g_i ↦ g_i^t`, and checks the set of rows is unchanged.
    pub fn is_galois_stable(&self, partition: &ClassPartition, t: u64) -> bool {
        let h = self.dim();
        let mut original: Vec<&Vec<CycNum>> = self.values.iter().collect();
        original.sort_by(|a, b| lex(a, b));
        let mut twisted: Vec<Vec<CycNum>> = Vec::with_capacity(h);
        for row in &self.values {
            let mut r = Vec::with_capacity(h);
            for (i, v) in row.iter().enumerate() {
                let Ok(img) = v.galois(t) else { return false };
                if img != row[partition.power_class(i, t)] {
                    return false;
                }
                r.push(img);
            }
            twisted.push(r);
        }
        twisted.sort_by(|a, b| lex(a, b));
        twisted.iter().zip(&original).all(|(a, b)| a == *b)
    }
}

/// Lexicographic order on rows by `canonical_cmp`.
pub fn lex(a: &[CycNum], b: &[CycNum]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.canonical_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or_else(|| a.len().cmp(&b.len()))
}

/// Recovers `χ(g_i) = Σ_k m_k ζ_e^k` (e = order of g_i) from the residues of
/// `χ` on the powers of `g_i`: `m_k = e^{-1} Σ_j χ(g_i^j) z_e^{-jk}`.
fn lift_value(
    chi_mod: &[u64],
    partition: &ClassPartition,
    i: usize,
    degree: u64,
    conductor: u32,
    z: u64,
    p: u64,
) -> Result<CycNum, TableError> {
    let e = partition.rep_order(i) as u64;
    let step = conductor as u64 / e;
    let ze_inv = inv_mod(pow_mod(z, step, p), p);
    let e_inv = inv_mod(e % p, p);
    let mut coeffs = vec![BigInt::zero(); conductor as usize];
    for k in 0..e {
        let mut acc = 0u64;
        for j in 0..e {
            let v = chi_mod[partition.power_class(i, j)];
            acc = (acc + v * pow_mod(ze_inv, j * k, p)) % p;
        }
        let m = acc * e_inv % p;
        if m > degree {
            return Err(TableError::InternalSplitFailure(format!(
                "eigenvalue multiplicity {m} exceeds degree {degree} at class {i}"
            )));
        }
        coeffs[(k * step) as usize] = BigInt::from(m);
    }
    Ok(CycNum::from_exponent_coeffs(conductor, &coeffs, BigInt::from(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn table(name: &str) -> (ClassAlgebra, CharacterTable) {
        let g = builtin::named(name).unwrap();
        let a = ClassAlgebra::new(&g, &g.conjugacy_classes());
        let t = CharacterTable::compute(&a).unwrap();
        (a, t)
    }

    fn ints(row: &[CycNum]) -> Vec<i64> {
        row.iter()
            .map(|v| v.is_rational_integer().unwrap().try_into().unwrap())
            .collect()
    }

    #[test]
    fn prime_choice() {
        assert_eq!(dixon_prime(1, 1), 3);
        assert_eq!(dixon_prime(4, 8), 13);
        assert_eq!(dixon_prime(24, 48), 73);
        assert_eq!(dixon_prime(3, 27), 13);
    }

    #[test]
    fn trivial_and_z2() {
        let (_, t) = table("C_1");
        assert_eq!(ints(t.row(0)), vec![1]);
        let (_, t) = table("C_2");
        assert_eq!(ints(t.row(0)), vec![1, 1]);
        assert_eq!(ints(t.row(1)), vec![1, -1]);
    }

    #[test]
    fn s3_table() {
        let (a, t) = table("S_3");
        assert_eq!(t.degrees(), &[1, 1, 2]);
        assert_eq!(ints(t.row(1)), vec![1, 1, -1]);
        assert_eq!(ints(t.row(2)), vec![2, -1, 0]);
        t.check_axioms(&a).unwrap();
        assert_eq!(t.linear_character_rows(), vec![0, 1]);
    }

    #[test]
    fn q8_linear_rows() {
        let (a, t) = table("Q8");
        t.check_axioms(&a).unwrap();
        assert_eq!(t.linear_character_rows().len(), 4);
    }

    #[test]
    fn c3_has_complex_values() {
        let (a, t) = table("C_3");
        t.check_axioms(&a).unwrap();
        assert_eq!(t.conductor(), 3);
        assert!(t.row(1)[1].is_rational_integer().is_none());
        assert_eq!(t.row(1)[1].is_root_of_unity(), Some(3));
    }

    #[test]
    fn idempotents() {
        let (a, t) = table("C_2");
        let e1 = t.block_idempotent(&a, 1);
        assert_eq!(e1.coeffs()[0], CycNum::from_ratio(1, 1, 2));
        assert_eq!(e1.coeffs()[1], CycNum::from_ratio(1, -1, 2));
        let (a, t) = table("C_1");
        assert_eq!(t.block_idempotent(&a, 0), a.unit());
        let (a, t) = table("D_5");
        let e0 = t.block_idempotent(&a, 0);
        for i in 0..a.dim() {
            assert_eq!(e0.coeffs()[i], CycNum::from_ratio(1, 1, 10));
        }
    }

    #[test]
    fn galois_stable_c5() {
        let g = builtin::named("C_5").unwrap();
        let cp = g.conjugacy_classes();
        let a = ClassAlgebra::new(&g, &cp);
        let t = CharacterTable::compute(&a).unwrap();
        for s in 1..5 {
            assert!(t.is_galois_stable(&cp, s));
        }
    }

    #[test]
    fn null_space_basics() {
        // x + y = 0 over F_5
        let ns = null_space(vec![vec![1, 1]], 2, 5);
        assert_eq!(ns, vec![vec![4, 1]]);
        assert_eq!(null_space(vec![vec![1, 0], vec![0, 1]], 2, 5).len(), 0);
    }
}
