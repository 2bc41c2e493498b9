#![allow(clippy::needless_range_loop)]

mod common;

use centrum::builtin::{self, CORPUS};
use centrum::class_algebra::{ClassAlgebra, RepChoice};
use centrum::cyclotomic::CycNum;
use centrum::CenterData;
use common::center;
use num_bigint::BigInt;
use proptest::prelude::*;

/// `c_ijk` by counting pairs `(x, y) ∈ 𝒞_i × 𝒞_j` with `xy = g_k`.
fn counted_constants(g: &CenterData) -> Vec<Vec<Vec<usize>>> {
    let h = g.class_count();
    let mut c = vec![vec![vec![0usize; h]; h]; h];
    for i in 0..h {
        for j in 0..h {
            for &x in g.classes.class(i) {
                for &y in g.classes.class(j) {
                    let xy = g.group.mul(x, y);
                    let k = g.classes.class_of(xy);
                    if g.classes.representative(k) == xy {
                        c[i][j][k] += 1;
                    }
                }
            }
        }
    }
    c
}

#[test]
fn structure_constants_match_pair_counts() {
    for name in CORPUS.iter().filter(|n| builtin::named(n).unwrap().order() <= 24) {
        let g = center(name);
        let c = counted_constants(&g);
        let h = g.class_count();
        for i in 0..h {
            for j in 0..h {
                for k in 0..h {
                    assert_eq!(*g.algebra.c(i, j, k), BigInt::from(c[i][j][k]), "{name} ({i},{j},{k})");
                }
            }
        }
    }
}

#[test]
fn representative_choice_does_not_matter() {
    for name in CORPUS.iter().filter(|n| builtin::named(n).unwrap().order() <= 27) {
        let g = center(name);
        let other = ClassAlgebra::with_representatives(&g.group, &g.classes, RepChoice::Maximal);
        let h = g.class_count();
        for i in 0..h {
            for j in 0..h {
                for k in 0..h {
                    assert_eq!(g.algebra.c(i, j, k), other.c(i, j, k), "{name}");
                }
            }
        }
    }
}

/// Multiplication in the full group ring over the cyclotomic field.
fn convolve(g: &CenterData, u: &[CycNum], v: &[CycNum]) -> Vec<CycNum> {
    let n = g.order();
    let zero = CycNum::zero(u[0].conductor());
    let mut out = vec![zero; n];
    for x in 0..n {
        for y in 0..n {
            let xy = g.group.mul(x, y);
            out[xy] = &out[xy] + &(&u[x] * &v[y]);
        }
    }
    out
}

fn small_groups() -> Vec<&'static str> {
    CORPUS
        .iter()
        .copied()
        .filter(|n| builtin::named(n).unwrap().order() <= 16)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn center_product_is_convolution(
        which in 0usize..22,
        coeffs in prop::collection::vec((-3i64..=3, -2i64..=2), 2 * 16),
    ) {
        let names = small_groups();
        let g = center(names[which % names.len()]);
        let h = g.class_count();
        let n = g.algebra.conductor();
        let z = CycNum::zeta_pow(n, 1);
        let coeff = |k: usize| {
            let (a, b) = coeffs[k % coeffs.len()];
            &CycNum::from_int(n, a) + &z.mul_int(b)
        };
        let (x, y): (Vec<CycNum>, Vec<CycNum>) = ((0..h).map(coeff).collect(), (h..2 * h).map(coeff).collect());
        let spread = |c: &[CycNum]| -> Vec<CycNum> { (0..g.order()).map(|e| c[g.classes.class_of(e)].clone()).collect() };
        let full = convolve(&g, &spread(&x), &spread(&y));
        let prod = g.algebra.multiply(&g.algebra.element(x.clone()), &g.algebra.element(y.clone()));
        for e in 0..g.order() {
            prop_assert_eq!(prod.coeff(g.classes.class_of(e)), &full[e]);
        }
        let ex = g.algebra.element(x);
        let ey = g.algebra.element(y);
        let alg = &g.algebra;
        prop_assert_eq!(alg.augmentation(&alg.multiply(&ex, &ey)), &alg.augmentation(&ex) * &alg.augmentation(&ey));
        prop_assert_eq!(alg.star(&alg.star(&ex)), ex.clone());
        prop_assert_eq!(alg.star(&alg.multiply(&ex, &ey)), alg.multiply(&alg.star(&ex), &alg.star(&ey)));
        prop_assert_eq!(alg.multiply(&ex, &ey), alg.multiply(&ey, &ex));
    }
}

#[test]
#[should_panic(expected = "another algebra")]
fn elements_of_different_algebras_do_not_mix() {
    let a = center("C_3");
    let b = center("C_3");
    let _ = a.algebra.add(&a.algebra.unit(), &b.algebra.unit());
}

/// `(1/|G|) Σ_g χ(g) conj ψ(g)` over elements.
fn element_inner_product(g: &CenterData, a: &[CycNum], b: &[CycNum]) -> CycNum {
    let n = g.order();
    let s = (0..n).fold(CycNum::zero(a[0].conductor()), |acc, e| {
        let k = g.classes.class_of(e);
        &acc + &(&a[k] * &b[k].conj())
    });
    s.div_int(n)
}

#[test]
fn orthogonality_over_elements() {
    for name in CORPUS {
        let g = center(name);
        let x = g.table.values();
        let h = x.len();
        let sum_sq: u64 = g.table.degrees().iter().map(|d| d * d).sum();
        assert_eq!(sum_sq, g.order() as u64, "{name}");
        for l in 0..h {
            assert_eq!(g.order() as u64 % g.table.degree(l), 0, "{name}");
            for m in 0..h {
                let ip = element_inner_product(&g, &x[l], &x[m]);
                assert_eq!(ip, CycNum::from_int(1, (l == m) as i64), "{name} rows {l},{m}");
            }
            assert!(x[l].iter().all(CycNum::is_algebraic_integer));
        }
        for i in 0..h {
            for j in 0..h {
                let s = (0..h).fold(CycNum::zero(1), |acc, l| &acc + &(&x[l][i] * &x[l][j].conj()));
                let expect = if i == j {
                    g.group.centralizer_order(g.classes.representative(i))
                } else {
                    0
                };
                assert_eq!(s, CycNum::from_int(1, expect), "{name} columns {i},{j}");
            }
        }
    }
}

#[test]
fn central_characters_are_homomorphisms() {
    for name in CORPUS.iter().filter(|n| builtin::named(n).unwrap().order() <= 27) {
        let g = center(name);
        let h = g.class_count();
        for l in 0..h {
            let w: Vec<CycNum> = (0..h).map(|i| g.table.central_character(l, i)).collect();
            for i in 0..h {
                for j in 0..h {
                    let rhs = (0..h).fold(CycNum::zero(1), |acc, k| {
                        &acc + &w[k].mul_int(g.algebra.c(i, j, k).clone())
                    });
                    assert_eq!(&w[i] * &w[j], rhs, "{name}");
                }
            }
        }
    }
}

#[test]
fn block_idempotents() {
    for name in ["S_3", "Q8", "A_4", "C_5", "SD16", "Heis_3"] {
        let g = center(name);
        let alg = &g.algebra;
        let h = g.class_count();
        let e: Vec<_> = (0..h).map(|l| g.table.block_idempotent(alg, l)).collect();
        let mut total = alg.zero();
        for l in 0..h {
            total = alg.add(&total, &e[l]);
            for m in 0..h {
                let p = alg.multiply(&e[l], &e[m]);
                assert_eq!(p, if l == m { e[l].clone() } else { alg.zero() }, "{name}");
            }
            for i in 0..h {
                let lhs = alg.multiply(&alg.class_sum(i), &e[l]);
                assert_eq!(lhs, alg.scale(&e[l], &g.table.central_character(l, i)), "{name}");
            }
        }
        assert_eq!(total, alg.unit(), "{name}");
        // the principal idempotent is the normalized sum of all elements
        let principal = e[0]
            .coeffs()
            .iter()
            .all(|c| *c == CycNum::from_ratio(1, 1, g.order() as i64));
        assert!(principal, "{name}");
    }
}

#[test]
fn cyclic_tables_match_explicit_characters() {
    for n in [1usize, 2, 3, 4, 5, 6, 7, 8, 9] {
        let g = center(&format!("C_{n}"));
        let gen = (0..n).find(|&x| g.group.element_order(x) as usize == n).unwrap();
        let mut expected: Vec<Vec<CycNum>> = (0..n)
            .map(|k| {
                let mut row = vec![CycNum::zero(n as u32); n];
                for j in 0..n {
                    let e = g.group.power(gen, j as u64);
                    row[g.classes.class_of(e)] = CycNum::zeta_pow(n as u32, (j * k) as u64);
                }
                row
            })
            .collect();
        let mut actual: Vec<Vec<CycNum>> = g.table.embedded(n as u32);
        expected.sort_by(|a, b| centrum::char_table::lex(a, b));
        actual.sort_by(|a, b| centrum::char_table::lex(a, b));
        assert_eq!(actual, expected, "C_{n}");
    }
}

#[test]
fn known_degrees_and_quaternion_values() {
    let cases: [(&str, &[u64]); 8] = [
        ("S_3", &[1, 1, 2]),
        ("D_4", &[1, 1, 1, 1, 2]),
        ("Q8", &[1, 1, 1, 1, 2]),
        ("A_4", &[1, 1, 1, 3]),
        ("S_4", &[1, 1, 2, 3, 3]),
        ("Heis_3", &[1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3]),
        ("SD16", &[1, 1, 1, 1, 2, 2, 2]),
        ("C_2×S_4", &[1, 1, 1, 1, 2, 2, 3, 3, 3, 3]),
    ];
    for (name, degrees) in cases {
        assert_eq!(center(name).table.degrees(), degrees, "{name}");
    }
    // the degree-two character of Q8 is -2 on the central involution and 0
    // off the center
    let q8 = center("Q8");
    let z = (0..5).find(|&i| q8.classes.size(i) == 1 && i != 0).unwrap();
    let row = &q8.table.values()[4];
    for i in 0..5 {
        let expect = match i {
            0 => 2,
            _ if i == z => -2,
            _ => 0,
        };
        assert_eq!(row[i], CycNum::from_int(1, expect));
    }
    // SD16 needs a square root of -2
    let sd = center("SD16");
    assert_eq!(sd.table.conductor(), 8);
    assert!(sd.table.values().iter().flatten().any(|v| v.as_rational().is_none()));
}

#[test]
fn tables_are_galois_stable() {
    for name in CORPUS.iter().filter(|n| builtin::named(n).unwrap().order() <= 27) {
        let g = center(name);
        let n = g.table.conductor() as u64;
        for t in (1..=n).filter(|&t| num_integer::gcd(t, n) == 1) {
            assert!(g.table.is_galois_stable(&g.classes, t), "{name} t={t}");
        }
    }
}
