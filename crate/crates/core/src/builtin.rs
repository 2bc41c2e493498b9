//! Named groups: cyclic, dihedral, generalized quaternion, semidihedral,
//! symmetric, alternating, the two extraspecial groups of order 27, and
//! direct products of these.

use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, DEFAULT_ORDER_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NameError {
    #[error("unknown group name `{0}`")]
    UnknownName(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `<a, x | a^m = 1, x^k = a^t, x a x^{-1} = a^r>`, elements `a^i x^e` at
/// index `i + m*e`. Requires `r^k ≡ 1` and `r t ≡ t (mod m)`.
pub fn metacyclic(m: usize, k: usize, r: usize, t: usize) -> FiniteGroup {
    let n = m * k;
    let mut rpow = vec![1usize; k];
    for e in 1..k {
        rpow[e] = rpow[e - 1] * r % m;
    }
    assert_eq!(rpow[k - 1] * r % m, 1 % m, "r must have order dividing k");
    assert_eq!(r * t % m, t % m, "x^k must be fixed by conjugation");
    let table: Vec<Vec<usize>> = (0..n)
        .map(|p| {
            let (i, e) = (p % m, p / m);
            (0..n)
                .map(|q| {
                    let (j, f) = (q % m, q / m);
                    let mut a = i + rpow[e] * j;
                    let mut x = e + f;
                    if x >= k {
                        x -= k;
                        a += t;
                    }
                    a % m + m * x
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_cayley(&table).expect("metacyclic presentation is a group")
}

pub fn cyclic(n: usize) -> FiniteGroup {
    metacyclic(n.max(1), 1, 1, 0)
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> FiniteGroup {
    metacyclic(n, 2, n - 1, 0)
}

/// Generalized quaternion group of order `4m`.
pub fn quaternion(order: usize) -> FiniteGroup {
    assert!(order.is_multiple_of(4) && order >= 8);
    let m = order / 2;
    metacyclic(m, 2, m - 1, m / 2)
}

pub fn semidihedral16() -> FiniteGroup {
    metacyclic(8, 2, 3, 0)
}

pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    if n <= 1 {
        return FiniteGroup::from_permutations(1, &[], DEFAULT_ORDER_CAP);
    }
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    FiniteGroup::from_permutations(n, &[cycle, swap], DEFAULT_ORDER_CAP)
}

pub fn alternating(n: usize) -> Result<FiniteGroup, GroupError> {
    if n <= 2 {
        return FiniteGroup::from_permutations(1, &[], DEFAULT_ORDER_CAP);
    }
    let gens: Vec<Vec<usize>> = (2..n)
        .map(|c| {
            let mut p: Vec<usize> = (0..n).collect();
            p[0] = 1;
            p[1] = c;
            p[c] = 0;
            p
        })
        .collect();
    FiniteGroup::from_permutations(n, &gens, DEFAULT_ORDER_CAP)
}

/// Heisenberg group mod 3: extraspecial of order 27 and exponent 3.
pub fn heisenberg3() -> FiniteGroup {
    let enc = |a: usize, b: usize, c: usize| a + 3 * b + 9 * c;
    let table: Vec<Vec<usize>> = (0..27)
        .map(|p| {
            let (a, b, c) = (p % 3, p / 3 % 3, p / 9);
            (0..27)
                .map(|q| {
                    let (a2, b2, c2) = (q % 3, q / 3 % 3, q / 9);
                    enc((a + a2) % 3, (b + b2) % 3, (c + c2 + a * b2) % 3)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_cayley(&table).expect("Heisenberg group")
}

/// Extraspecial group of order 27 and exponent 9.
pub fn m27() -> FiniteGroup {
    metacyclic(9, 3, 4, 0)
}

/// Parses a single name or a product such as `C_2×C_2` (also `x` or `*`).
pub fn named(name: &str) -> Result<FiniteGroup, NameError> {
    let parts: Vec<&str> = name
        .split(['×', '*', 'x'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    match parts.as_slice() {
        [] => Err(NameError::UnknownName(name.to_string())),
        [single] => atom(single),
        many => {
            let mut g = atom(many[0])?;
            for p in &many[1..] {
                g = g.direct_product(&atom(p)?);
            }
            Ok(g)
        }
    }
}

fn atom(name: &str) -> Result<FiniteGroup, NameError> {
    let unknown = || NameError::UnknownName(name.to_string());
    let param = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)
            .and_then(|s| s.strip_prefix('_').unwrap_or(s).parse().ok())
    };
    let g = match name {
        "Q8" => quaternion(8),
        "Q16" => quaternion(16),
        "SD16" => semidihedral16(),
        "Heis_3" => heisenberg3(),
        "M27" => m27(),
        "V4" => cyclic(2).direct_product(&cyclic(2)),
        _ => {
            if let Some(n) = param("C").filter(|&n| n >= 1) {
                cyclic(n)
            } else if let Some(n) = param("D").filter(|&n| n >= 3) {
                dihedral(n)
            } else if let Some(n) = param("S").filter(|&n| (1..=7).contains(&n)) {
                symmetric(n)?
            } else if let Some(n) = param("A").filter(|&n| (1..=7).contains(&n)) {
                alternating(n)?
            } else if let Some(base) = name.strip_suffix("^2").or(name.strip_suffix("^3")) {
                let reps = if name.ends_with("^2") { 2 } else { 3 };
                let b = atom(base)?;
                let mut g = b.clone();
                for _ in 1..reps {
                    g = g.direct_product(&b);
                }
                g
            } else {
                return Err(unknown());
            }
        }
    };
    Ok(g)
}

/// The builtin corpus used by the self test and the acceptance suite,
/// as canonical names.
pub const CORPUS: &[&str] = &[
    "C_1", "C_2", "C_3", "C_4", "C_2×C_2", "C_5", "C_6", "S_3", "C_7", "C_8", "C_4×C_2", "C_2^3", "D_4", "Q8", "C_9",
    "C_3×C_3", "D_5", "A_4", "D_6", "D_7", "Q16", "SD16", "D_8", "C_2×Q8", "C_2×D_4", "S_4", "D_12", "C_3×S_3",
    "Heis_3", "M27", "S_3×S_3", "C_2×A_4", "D_24", "C_2×S_4",
];

/// Nilpotent groups of order 8.
pub const ORDER8: &[&str] = &["D_4", "Q8", "C_8", "C_4×C_2", "C_2^3"];

/// Maximal class groups of order 16.
pub const MAXCLASS16: &[&str] = &["D_8", "SD16", "Q16"];
