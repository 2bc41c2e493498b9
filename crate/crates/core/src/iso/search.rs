//! Exhaustive search over character bijections `σ`.
//!
//! Two necessary conditions prune `σ` before any matrix is formed: linear
//! characters go to linear characters, and `χ'_{lσ}(1)²/χ_l(1)` and
//! `χ_l(1)²/χ'_{lσ}(1)` are integers. A third one is structural: a matrix
//! with rational entries commutes with every `ζ ↦ ζ^t`, which permutes the
//! block idempotents, so `σ` must intertwine the Galois actions on the rows
//! of both tables; `σ` is therefore chosen one Galois orbit at a time.
//! Survivors are screened by a
//! fixed-width kernel that evaluates `|G|·D·a_ij` in `Z[ζ]` and stops at the
//! first non-integral entry; accepted `σ` are rebuilt through the exact
//! `CycNum` path and both results must agree.

use std::thread;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::{determinant, IsoCandidate, IsoError, IsoProblem};

pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub budget: u128,
    pub threads: usize,
    /// Restrict to `σ` commuting with the Galois actions.
    pub galois_prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            threads: 1,
            galois_prune: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Unimodular candidates in lexicographic `σ` order.
    pub candidates: Vec<IsoCandidate>,
    /// Number of `σ` actually visited.
    pub space_size: u128,
    /// Number of `σ` surviving the degree prunes alone.
    pub degree_space: u128,
}

/// `allowed[l][m]`: may `χ_l` be paired with `χ'_m`?
pub fn allowed_pairs(problem: &IsoProblem) -> Vec<Vec<bool>> {
    let h = problem.dim();
    let st = &problem.src.table;
    let dt = &problem.dst.table;
    (0..h)
        .map(|l| {
            let d = st.degree(l);
            (0..h)
                .map(|m| {
                    let e = dt.degree(m);
                    let linear_ok = (d == 1) == (e == 1);
                    linear_ok && (e * e).is_multiple_of(d) && (d * d).is_multiple_of(e)
                })
                .collect()
        })
        .collect()
}

/// Number of bijections compatible with `allowed` (a permanent, by dynamic
/// programming over subsets). Saturates at `u128::MAX` for `h > 24`.
pub fn search_space_size(allowed: &[Vec<bool>]) -> u128 {
    let h = allowed.len();
    if h > 24 {
        return u128::MAX;
    }
    let mut ways = vec![0u128; 1 << h];
    ways[0] = 1;
    for mask in 0usize..(1 << h) {
        let w = ways[mask];
        if w == 0 {
            continue;
        }
        let l = mask.count_ones() as usize;
        if l == h {
            continue;
        }
        for (m, &ok) in allowed[l].iter().enumerate() {
            if ok && mask & (1 << m) == 0 {
                let slot = &mut ways[mask | (1 << m)];
                *slot = slot.saturating_add(w);
            }
        }
    }
    ways[(1 << h) - 1]
}

/// Visits every compatible `σ` in lexicographic order.
pub fn enumerate_sigmas(allowed: &[Vec<bool>], mut visit: impl FnMut(&[usize])) {
    let h = allowed.len();
    let mut sigma = Vec::with_capacity(h);
    let mut used = vec![false; h];
    fn rec(allowed: &[Vec<bool>], sigma: &mut Vec<usize>, used: &mut [bool], visit: &mut dyn FnMut(&[usize])) {
        let l = sigma.len();
        if l == allowed.len() {
            visit(sigma);
            return;
        }
        for m in 0..allowed.len() {
            if allowed[l][m] && !used[m] {
                used[m] = true;
                sigma.push(m);
                rec(allowed, sigma, used, visit);
                sigma.pop();
                used[m] = false;
            }
        }
    }
    rec(allowed, &mut sigma, &mut used, &mut visit);
}

const NONE: usize = usize::MAX;

/// The `σ` compatible with the degree prunes that also commute with the
/// Galois actions on characters.
pub struct SigmaSpace {
    allowed: Vec<Vec<bool>>,
    /// Row permutations `(src, dst)` induced by each unit `t`.
    actions: Vec<(Vec<usize>, Vec<usize>)>,
}

fn row_action(table: &[Vec<crate::cyclotomic::CycNum>], t: u64) -> Vec<usize> {
    table
        .iter()
        .map(|row| {
            let image: Vec<_> = row.iter().map(|v| v.galois(t).expect("t is a unit")).collect();
            table
                .iter()
                .position(|r| *r == image)
                .expect("Galois conjugate of an irreducible character is irreducible")
        })
        .collect()
}

impl SigmaSpace {
    pub fn for_options(problem: &IsoProblem, options: &SearchOptions) -> Self {
        if options.galois_prune {
            Self::new(problem)
        } else {
            Self::degree_only(allowed_pairs(problem))
        }
    }

    pub fn new(problem: &IsoProblem) -> Self {
        let n = problem.conductor() as u64;
        let actions = (2..n)
            .filter(|&t| num_integer::gcd(t, n) == 1)
            .map(|t| (row_action(problem.src_table(), t), row_action(problem.dst_table(), t)))
            .collect();
        SigmaSpace {
            allowed: allowed_pairs(problem),
            actions,
        }
    }

    /// Degree prunes only.
    pub fn degree_only(allowed: Vec<Vec<bool>>) -> Self {
        SigmaSpace {
            allowed,
            actions: Vec::new(),
        }
    }

    pub fn allowed(&self) -> &[Vec<bool>] {
        &self.allowed
    }

    /// Number of `σ`, or `cap + 1` if there are more than `cap`.
    pub fn count(&self, cap: u128) -> u128 {
        let mut n = 0u128;
        self.for_each(|_| {
            n += 1;
            n <= cap
        });
        n
    }

    /// Visits every `σ` in a fixed order until `visit` returns false.
    pub fn for_each(&self, mut visit: impl FnMut(&[usize]) -> bool) {
        let h = self.allowed.len();
        let mut sigma = vec![NONE; h];
        let mut used = vec![false; h];
        self.rec(&mut sigma, &mut used, &mut visit);
    }

    fn rec(&self, sigma: &mut [usize], used: &mut [bool], visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let Some(l) = sigma.iter().position(|&m| m == NONE) else {
            return visit(sigma);
        };
        for m in 0..sigma.len() {
            if !self.allowed[l][m] || used[m] {
                continue;
            }
            let mut placed = Vec::new();
            let mut ok = true;
            let orbit = std::iter::once((l, m)).chain(self.actions.iter().map(|(s, d)| (s[l], d[m])));
            for (a, b) in orbit {
                if sigma[a] == b {
                    continue;
                }
                if sigma[a] != NONE || used[b] || !self.allowed[a][b] {
                    ok = false;
                    break;
                }
                sigma[a] = b;
                used[b] = true;
                placed.push(a);
            }
            let go_on = !ok || self.rec(sigma, used, visit);
            for a in placed {
                used[sigma[a]] = false;
                sigma[a] = NONE;
            }
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Sizes of the degree-pruned space and of the space a search with
/// `options` visits, the latter capped at `budget + 1`.
pub fn space_sizes(problem: &IsoProblem, options: &SearchOptions) -> (u128, u128) {
    let space = SigmaSpace::for_options(problem, options);
    let degree = search_space_size(space.allowed());
    let visited = if options.galois_prune {
        space.count(degree.min(options.budget))
    } else {
        degree
    };
    (degree, visited)
}

/// `Z[ζ_N]` arithmetic on `i128` coefficient vectors for the screen.
struct Kernel {
    conductor: usize,
    degree: usize,
    powers: Vec<Vec<i64>>,
    /// `|𝒞_i| χ_l(g_i^{-1}) · D/χ_l(1)`, indexed `[i][l]`.
    left: Vec<Vec<Vec<i128>>>,
    /// `χ'_m(1) χ'_m(g'_j)`, indexed `[m][j]`.
    right: Vec<Vec<Vec<i128>>>,
    scale: i128,
}

fn to_i128(v: &crate::cyclotomic::CycNum) -> Option<Vec<i128>> {
    if !v.denominator().is_one() {
        return None;
    }
    v.numerator().iter().map(|c| c.to_i128()).collect()
}

impl Kernel {
    fn new(problem: &IsoProblem) -> Option<Kernel> {
        let h = problem.dim();
        let n = problem.conductor();
        let field = crate::cyclotomic::field(n);
        let st = &problem.src.table;
        let lcm_deg = (0..h).fold(1u64, |acc, l| num_integer::lcm(acc, st.degree(l)));
        let x = problem.src_table();
        let mut left = Vec::with_capacity(h);
        for i in 0..h {
            let inv = problem.src.classes.inverse_class(i);
            let mut row = Vec::with_capacity(h);
            for (l, chi) in x.iter().enumerate() {
                let factor = problem.src.algebra.size(i) as u64 * (lcm_deg / st.degree(l));
                row.push(to_i128(&chi[inv].mul_int(factor))?);
            }
            left.push(row);
        }
        let right = problem
            .dst_table()
            .iter()
            .enumerate()
            .map(|(m, chi)| {
                chi.iter()
                    .map(|v| to_i128(&v.mul_int(problem.dst.table.degree(m))))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Kernel {
            conductor: n as usize,
            degree: field.degree(),
            powers: (0..n as u64).map(|e| field.power(e).to_vec()).collect(),
            left,
            right,
            scale: problem.src.order() as i128 * lcm_deg as i128,
        })
    }

    /// `a_ij` if it is a rational integer.
    fn entry(&self, sigma: &[usize], i: usize, j: usize, acc: &mut [i128]) -> Option<i128> {
        acc.fill(0);
        let n = self.conductor;
        for (l, u) in self.left[i].iter().enumerate() {
            let w = &self.right[sigma[l]][j];
            for (a, &ua) in u.iter().enumerate() {
                if ua == 0 {
                    continue;
                }
                for (b, &wb) in w.iter().enumerate() {
                    if wb != 0 {
                        acc[(a + b) % n] += ua * wb;
                    }
                }
            }
        }
        let mut reduced = vec![0i128; self.degree];
        for (e, &c) in acc.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (k, &p) in self.powers[e].iter().enumerate() {
                reduced[k] += c * p as i128;
            }
        }
        if reduced[1..].iter().any(|&c| c != 0) || reduced[0] % self.scale != 0 {
            return None;
        }
        Some(reduced[0] / self.scale)
    }

    fn integral_matrix(&self, sigma: &[usize], h: usize) -> Option<Vec<Vec<i128>>> {
        let mut acc = vec![0i128; self.conductor];
        let mut m = vec![vec![0i128; h]; h];
        for i in 0..h {
            for j in 0..h {
                m[i][j] = self.entry(sigma, i, j, &mut acc)?;
            }
        }
        Some(m)
    }
}

fn unimodular(m: &[Vec<i128>]) -> bool {
    let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    determinant(big).abs().is_one()
}

fn check_budget(space: u128, options: &SearchOptions) -> Result<(), IsoError> {
    if space > options.budget {
        Err(IsoError::SearchSpaceExceeded {
            size: space,
            budget: options.budget,
        })
    } else {
        Ok(())
    }
}

/// A `σ` that passed the screen, with its integer matrix when known.
type Hit = (Vec<usize>, Option<Vec<Vec<i128>>>);

/// All `σ` with unimodular `A`, sorted lexicographically. The enumeration
/// is striped across `options.threads` workers; the output does not depend
/// on the thread count.
pub fn search_integral_isomorphisms(problem: &IsoProblem, options: &SearchOptions) -> Result<SearchOutcome, IsoError> {
    let sigmas = SigmaSpace::for_options(problem, options);
    let degree_space = search_space_size(sigmas.allowed());
    let space = sigmas.count(degree_space.min(options.budget));
    check_budget(space, options)?;
    let h = problem.dim();
    let kernel = Kernel::new(problem);
    let threads = options.threads.max(1);

    let screen = |worker: usize| -> Vec<Hit> {
        let mut found = Vec::new();
        let mut index = 0usize;
        sigmas.for_each(|sigma| {
            let mine = index % threads == worker;
            index += 1;
            if !mine {
                return true;
            }
            match &kernel {
                Some(k) => {
                    if let Some(m) = k.integral_matrix(sigma, h) {
                        if unimodular(&m) {
                            found.push((sigma.to_vec(), Some(m)));
                        }
                    }
                }
                // Values too wide for the fixed-width screen: exact path only.
                None => {
                    let c = problem.candidate_matrix(sigma);
                    if c.unimodular {
                        found.push((sigma.to_vec(), None));
                    }
                }
            }
            true
        });
        found
    };

    let mut hits: Vec<Hit> = if threads == 1 {
        screen(0)
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = (0..threads).map(|w| s.spawn(move || screen(w))).collect();
            handles
                .into_iter()
                .flat_map(|hd| hd.join().expect("search worker panicked"))
                .collect()
        })
    };
    hits.sort_by(|a, b| a.0.cmp(&b.0));

    let candidates = hits
        .into_iter()
        .map(|(sigma, fast)| {
            let c = problem.candidate_matrix(&sigma);
            if let Some(m) = fast {
                for (row, frow) in c.matrix.iter().zip(&m) {
                    for (v, &f) in row.iter().zip(frow) {
                        assert_eq!(
                            v.is_rational_integer(),
                            Some(BigInt::from(f)),
                            "screen and exact matrix disagree for σ = {sigma:?}"
                        );
                    }
                }
            }
            assert!(c.unimodular);
            c
        })
        .collect();
    Ok(SearchOutcome {
        candidates,
        space_size: space,
        degree_space,
    })
}

/// Every `σ` in the pruned space with its full flag set, sorted by `σ`.
pub fn search_all_candidates(problem: &IsoProblem, options: &SearchOptions) -> Result<Vec<IsoCandidate>, IsoError> {
    let sigmas = SigmaSpace::for_options(problem, options);
    let degree_space = search_space_size(sigmas.allowed());
    check_budget(sigmas.count(degree_space.min(options.budget)), options)?;
    let mut out = Vec::new();
    sigmas.for_each(|sigma| {
        out.push(problem.candidate_matrix(sigma));
        true
    });
    out.sort_by(|a, b| a.sigma.cmp(&b.sigma));
    Ok(out)
}
