#![allow(dead_code)]

use centrum::builtin;
use centrum::cyclotomic::CycNum;
use centrum::CenterData;
use num_bigint::BigInt;
use num_traits::Zero;

pub fn center(name: &str) -> CenterData {
    CenterData::new(name, builtin::named(name).expect("builtin")).expect("table")
}

/// `1/x` as the product of the other Galois conjugates over the norm.
pub fn inverse(x: &CycNum) -> CycNum {
    assert!(!x.is_zero());
    let n = x.conductor() as u64;
    let mut rest = CycNum::one(x.conductor());
    for t in 2..n.max(2) {
        if num_integer::gcd(t, n) == 1 {
            rest = &rest * &x.galois(t).unwrap();
        }
    }
    let norm = x * &rest;
    let (p, q) = norm.as_rational().expect("norm is rational");
    rest.scale(&q, &p)
}

/// Gauss-Jordan inverse over the cyclotomic field.
pub fn invert(m: &[Vec<CycNum>]) -> Vec<Vec<CycNum>> {
    let h = m.len();
    let c = m[0][0].conductor();
    let mut a: Vec<Vec<CycNum>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..h).map(|j| CycNum::from_int(c, (i == j) as i64)));
            r
        })
        .collect();
    for col in 0..h {
        let p = (col..h).find(|&r| !a[r][col].is_zero()).expect("invertible");
        a.swap(col, p);
        let inv = inverse(&a[col][col]);
        a[col] = a[col].iter().map(|v| v * &inv).collect();
        for r in 0..h {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot = a[col].clone();
                a[r] = a[r].iter().zip(&pivot).map(|(v, p)| v - &(&f * p)).collect();
            }
        }
    }
    a.into_iter().map(|r| r[h..].to_vec()).collect()
}

pub fn mat_mul(a: &[Vec<CycNum>], b: &[Vec<CycNum>]) -> Vec<Vec<CycNum>> {
    let c = a[0][0].conductor();
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(CycNum::zero(c), |acc, (x, br)| &acc + &(x * &br[j]))
                })
                .collect()
        })
        .collect()
}

/// `A = X^{-1} M X'` with `M_{l,lσ} = χ'_{lσ}(1)/χ_l(1)`, solved directly.
pub fn oracle_matrix(
    x_inv: &[Vec<CycNum>],
    xp: &[Vec<CycNum>],
    deg: &[u64],
    deg_p: &[u64],
    sigma: &[usize],
) -> Vec<Vec<CycNum>> {
    let c = xp[0][0].conductor();
    let mxp: Vec<Vec<CycNum>> = (0..sigma.len())
        .map(|l| {
            let ratio = CycNum::from_ratio(c, deg_p[sigma[l]], deg[l]);
            xp[sigma[l]].iter().map(|v| &ratio * v).collect()
        })
        .collect();
    mat_mul(x_inv, &mxp)
}

pub fn integer_matrix(a: &[Vec<CycNum>]) -> Option<Vec<Vec<BigInt>>> {
    a.iter()
        .map(|r| r.iter().map(CycNum::is_rational_integer).collect())
        .collect()
}

/// Plain cofactor expansion, for small matrices only.
pub fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for (j, v) in m[0].iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = v * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for m in 0..used.len() {
            if !used[m] {
                used[m] = true;
                prefix.push(m);
                rec(prefix, used, out);
                prefix.pop();
                used[m] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The set of `σ` whose directly solved matrix is unimodular, over all of
/// `S_h` with no pruning.
pub fn oracle_integral_sigmas(src: &CenterData, dst: &CenterData) -> Vec<Vec<usize>> {
    let n = num_integer::lcm(src.table.conductor(), dst.table.conductor());
    let x = src.table.embedded(n);
    let xp = dst.table.embedded(n);
    let x_inv = invert(&x);
    let h = x.len();
    permutations(h)
        .into_iter()
        .filter(|sigma| {
            let (deg, deg_p) = (src.table.degrees(), dst.table.degrees());
            let mut m = vec![vec![BigInt::zero(); h]; h];
            for i in 0..h {
                for j in 0..h {
                    let v = (0..h).fold(CycNum::zero(n), |acc, l| {
                        let r = CycNum::from_ratio(n, deg_p[sigma[l]], deg[l]);
                        &acc + &(&x_inv[i][l] * &(&r * &xp[sigma[l]][j]))
                    });
                    match v.is_rational_integer() {
                        Some(z) => m[i][j] = z,
                        None => return false,
                    }
                }
            }
            let d = if h <= 7 {
                cofactor_det(&m)
            } else {
                centrum::iso::determinant(m)
            };
            d == BigInt::from(1) || d == BigInt::from(-1)
        })
        .collect()
}
