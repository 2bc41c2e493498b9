//! Finite groups given by Cayley tables, and the derived structure the
//! class algebra needs: conjugacy classes, power maps, centers, quotients
//! and the upper central series.

use std::collections::{HashMap, VecDeque};

use num_integer::Integer;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// Default cap on the order of a permutation group closure.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// Largest order for which associativity is checked on every triple.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;
const SAMPLED_ASSOC_TRIPLES: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Defect {
    /// Row or column 0 is not the identity map.
    NoIdentity { index: usize },
    /// A row or column repeats an entry, so some inverse is missing.
    NotLatin { row: Option<usize>, column: Option<usize> },
    /// `(a*b)*c != a*(b*c)`.
    NonAssociative { a: usize, b: usize, c: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("empty Cayley table")]
    Empty,
    #[error("row {row} has length {len}, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {column}) is out of range")]
    OutOfRange { row: usize, column: usize, value: usize },
    #[error("not a group: {0:?}")]
    NotAGroup(Defect),
    #[error("generator {index} is not a permutation of {degree} points")]
    InvalidPermutation { index: usize, degree: usize },
    #[error("closure exceeds the order cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("subgroup is not normal: conjugating {element} by {by} leaves it")]
    NotNormal { element: usize, by: usize },
}

/// A finite group of order `n` on the element indices `0..n`, with `0` the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
}

impl FiniteGroup {
    /// Validates a Cayley table and derives inverses and element orders.
    pub fn from_cayley(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let mut flat = Vec::with_capacity(n * n);
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::Ragged {
                    row: r,
                    len: row.len(),
                    expected: n,
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::OutOfRange {
                        row: r,
                        column: c,
                        value: v,
                    });
                }
                flat.push(v as u32);
            }
        }
        Self::from_flat(n, flat, true)
    }

    fn from_flat(n: usize, table: Vec<u32>, check_assoc: bool) -> Result<Self, GroupError> {
        for i in 0..n {
            if table[i] as usize != i {
                return Err(GroupError::NotAGroup(Defect::NoIdentity { index: i }));
            }
            if table[i * n] as usize != i {
                return Err(GroupError::NotAGroup(Defect::NoIdentity { index: i }));
            }
        }
        let mut seen = vec![u32::MAX; n];
        for r in 0..n {
            for c in 0..n {
                let v = table[r * n + c] as usize;
                if seen[v] == r as u32 {
                    return Err(GroupError::NotAGroup(Defect::NotLatin {
                        row: Some(r),
                        column: None,
                    }));
                }
                seen[v] = r as u32;
            }
        }
        seen.fill(u32::MAX);
        for c in 0..n {
            for r in 0..n {
                let v = table[r * n + c] as usize;
                if seen[v] == c as u32 {
                    return Err(GroupError::NotAGroup(Defect::NotLatin {
                        row: None,
                        column: Some(c),
                    }));
                }
                seen[v] = c as u32;
            }
        }
        let mul = |a: usize, b: usize| table[a * n + b] as usize;
        if check_assoc {
            let check = |a: usize, b: usize, c: usize| -> Result<(), GroupError> {
                if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                    Err(GroupError::NotAGroup(Defect::NonAssociative { a, b, c }))
                } else {
                    Ok(())
                }
            };
            if n <= EXHAUSTIVE_ASSOC_LIMIT {
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            check(a, b, c)?;
                        }
                    }
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
                for _ in 0..SAMPLED_ASSOC_TRIPLES {
                    check(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n))?;
                }
            }
        }
        let mut inverse = vec![0u32; n];
        for g in 0..n {
            let x = (0..n).find(|&x| mul(g, x) == 0).expect("latin row contains identity");
            inverse[g] = x as u32;
        }
        let mut orders = vec![0u32; n];
        for g in 0..n {
            let mut k = 1;
            let mut x = g;
            while x != 0 {
                x = mul(x, g);
                k += 1;
            }
            orders[g] = k;
        }
        Ok(FiniteGroup {
            n,
            table,
            inverse,
            orders,
        })
    }

    /// Enumerates the closure of permutation generators breadth-first from
    /// the identity. Products compose left to right: `(p*q)(x) = q(p(x))`.
    /// Elements are indexed in discovery order with generators tried in
    /// input order.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>], cap: usize) -> Result<Self, GroupError> {
        for (index, g) in generators.iter().enumerate() {
            let mut hit = vec![false; degree];
            let ok = g.len() == degree && g.iter().all(|&x| x < degree && !std::mem::replace(&mut hit[x], true));
            if !ok {
                return Err(GroupError::InvalidPermutation { index, degree });
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y: Vec<usize> = elements[x].iter().map(|&p| g[p]).collect();
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(GroupError::OrderCapExceeded { cap });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                let ab: Vec<usize> = a.iter().map(|&p| b[p]).collect();
                table.push(index[&ab] as u32);
            }
        }
        Self::from_flat(n, table, false)
    }

    /// Direct product with elements `(a, b)` at index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let a = self.mul(x / n2, y / n2);
                let b = other.mul(x % n2, y % n2);
                table.push((a * n2 + b) as u32);
            }
        }
        Self::from_flat(n, table, false).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    pub fn power(&self, a: usize, k: u64) -> usize {
        let k = k % self.orders[a] as u64;
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    /// `x g x^{-1}`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    /// `a^{-1} b^{-1} a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn exponent(&self) -> u32 {
        self.orders.iter().fold(1u32, |acc, &o| acc.lcm(&o))
    }

    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn centralizer_order(&self, g: usize) -> usize {
        (0..self.n).filter(|&x| self.mul(x, g) == self.mul(g, x)).count()
    }

    /// Subgroup generated by `generators`.
    pub fn generate_subgroup(&self, generators: &[usize]) -> SubgroupSet {
        let mut member = vec![false; self.n];
        member[0] = true;
        let mut elems = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in generators {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elems.push(y);
                    queue.push_back(y);
                }
            }
        }
        elems.sort_unstable();
        let normal = self.is_normal(&member);
        SubgroupSet {
            elements: elems,
            normal,
        }
    }

    fn is_normal(&self, member: &[bool]) -> bool {
        self.normality_witness(member).is_none()
    }

    fn normality_witness(&self, member: &[bool]) -> Option<(usize, usize)> {
        for g in (0..self.n).filter(|&g| member[g]) {
            for x in 0..self.n {
                if !member[self.conjugate(g, x)] {
                    return Some((g, x));
                }
            }
        }
        None
    }

    pub fn conjugacy_classes(&self) -> ClassPartition {
        ClassPartition::of(self)
    }

    /// Elements whose conjugacy class is a singleton.
    pub fn center(&self) -> SubgroupSet {
        let elements = (0..self.n)
            .filter(|&g| (0..self.n).all(|x| self.mul(x, g) == self.mul(g, x)))
            .collect();
        SubgroupSet { elements, normal: true }
    }

    /// `Z_0 = 1 ⊂ Z_1 ⊂ …` until the chain stabilizes. The last term is the
    /// hypercenter; the group is nilpotent iff it is the whole group.
    pub fn upper_central_series(&self) -> Vec<SubgroupSet> {
        let mut series = vec![SubgroupSet {
            elements: vec![0],
            normal: true,
        }];
        loop {
            let prev = series.last().expect("nonempty");
            let mut member = vec![false; self.n];
            for &z in &prev.elements {
                member[z] = true;
            }
            let next: Vec<usize> = (0..self.n)
                .filter(|&g| (0..self.n).all(|x| member[self.commutator(g, x)]))
                .collect();
            if next.len() == prev.elements.len() {
                return series;
            }
            series.push(SubgroupSet {
                elements: next,
                normal: true,
            });
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.upper_central_series().last().is_some_and(|z| z.len() == self.n)
    }

    pub fn commutator_subgroup(&self) -> SubgroupSet {
        let mut gens: Vec<usize> = (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        gens.sort_unstable();
        gens.dedup();
        self.generate_subgroup(&gens)
    }

    /// Quotient by a normal subgroup. Cosets are indexed by increasing
    /// minimal representative, so the identity coset is element 0.
    pub fn quotient(&self, normal: &SubgroupSet) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        let mut member = vec![false; self.n];
        for &x in &normal.elements {
            member[x] = true;
        }
        if let Some((element, by)) = self.normality_witness(&member) {
            return Err(GroupError::NotNormal { element, by });
        }
        let mut projection = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n {
            if projection[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &k in &normal.elements {
                projection[self.mul(g, k)] = idx;
            }
        }
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(projection[self.mul(a, b)] as u32);
            }
        }
        let q = Self::from_flat(m, table, false)?;
        Ok((q, projection))
    }
}

/// A subgroup as a sorted element set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupSet {
    pub elements: Vec<usize>,
    pub normal: bool,
}

impl SubgroupSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        SubgroupSet {
            elements: (0..group.order()).collect(),
            normal: true,
        }
    }

    pub fn trivial() -> Self {
        SubgroupSet {
            elements: vec![0],
            normal: true,
        }
    }
}

/// Conjugacy classes in canonical order: the identity class first, the rest
/// by `(size, minimal element)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    rep_orders: Vec<u32>,
    /// `power_map[i][e]` is the class of `g_i^e`, for `e < order(g_i)`.
    power_map: Vec<Vec<usize>>,
    inverse_class: Vec<usize>,
}

impl ClassPartition {
    fn of(group: &FiniteGroup) -> Self {
        let n = group.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|x| group.conjugate(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes[1..].sort_by_key(|c| (c.len(), c[0]));
        Self::from_classes(group, classes)
    }

    fn from_classes(group: &FiniteGroup, classes: Vec<Vec<usize>>) -> Self {
        let mut class_of = vec![0usize; group.order()];
        for (i, c) in classes.iter().enumerate() {
            for &g in c {
                class_of[g] = i;
            }
        }
        let rep_orders: Vec<u32> = classes.iter().map(|c| group.element_order(c[0])).collect();
        let power_map = classes
            .iter()
            .map(|c| {
                let g = c[0];
                let mut acc = 0;
                (0..group.element_order(g))
                    .map(|_| {
                        let cls = class_of[acc];
                        acc = group.mul(acc, g);
                        cls
                    })
                    .collect()
            })
            .collect();
        let inverse_class = classes.iter().map(|c| class_of[group.inv(c[0])]).collect();
        ClassPartition {
            classes,
            class_of,
            rep_orders,
            power_map,
            inverse_class,
        }
    }

    /// Number of classes `h`.
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    /// The minimal element of class `i`.
    pub fn representative(&self, i: usize) -> usize {
        self.classes[i][0]
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn size(&self, i: usize) -> usize {
        self.classes[i].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn rep_order(&self, i: usize) -> u32 {
        self.rep_orders[i]
    }

    /// Class of `g_i^e`.
    pub fn power_class(&self, i: usize, e: u64) -> usize {
        let row = &self.power_map[i];
        row[(e % row.len() as u64) as usize]
    }

    /// The involution `i ↦ i∘` (class of inverses).
    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse_class[i]
    }

    /// Indices of the classes contained in `set`, or `None` if `set` is not
    /// a union of classes.
    pub fn support(&self, set: &SubgroupSet) -> Option<Vec<usize>> {
        let mut hits = vec![0usize; self.count()];
        for &g in &set.elements {
            hits[self.class_of[g]] += 1;
        }
        let mut out = Vec::new();
        for (i, &k) in hits.iter().enumerate() {
            if k == self.size(i) {
                out.push(i);
            } else if k != 0 {
                return None;
            }
        }
        Some(out)
    }
}
