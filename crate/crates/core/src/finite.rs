//! Finite groups given by multiplication tables, with the subgroup, quotient
//! and homomorphism machinery the rest of the crate builds on.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Default bound on the group order for operations that need the full
/// subgroup lattice.
pub const DEFAULT_SUBGROUP_BOUND: usize = 48;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiniteError {
    #[error("table is empty")]
    Empty,
    #[error("table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("table entry ({row},{col}) = {value} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("group order {order} exceeds the subgroup enumeration bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("subgroup is not normal: {g} conjugates {h} outside it")]
    NotNormal { g: usize, h: usize },
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("map is not a homomorphism: f({a}*{b}) != f({a})*f({b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("map has {got} images, source has order {expected}")]
    ImageCount { got: usize, expected: usize },
    #[error("image {0} is out of range for the target group")]
    ImageOutOfRange(usize),
    #[error("map is not an automorphism")]
    NotAutomorphism,
    #[error("invalid permutation generator: {0}")]
    BadPermutation(String),
    #[error("generator {0} is out of range")]
    GeneratorOutOfRange(usize),
    #[error("listed generators do not generate the group")]
    GeneratorsIncomplete,
}

/// A finite group stored as its full Cayley table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    gens: Vec<usize>,
    explicit_gens: bool,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order={})", self.order)
    }
}

impl FiniteGroup {
    /// Validates a Cayley table. Rows index the left factor.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self, FiniteError> {
        let order = rows.len();
        if order == 0 {
            return Err(FiniteError::Empty);
        }
        let mut table = Vec::with_capacity(order * order);
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != order {
                return Err(FiniteError::NotSquare { row, len: entries.len(), order });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(FiniteError::EntryOutOfRange { row, col, value });
                }
                table.push(value);
            }
        }
        let at = |a: usize, b: usize| table[a * order + b];

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(FiniteError::NoIdentity)?;

        let mut inverse = vec![0; order];
        for x in 0..order {
            inverse[x] = (0..order)
                .find(|&y| at(x, y) == identity && at(y, x) == identity)
                .ok_or(FiniteError::NoInverse { element: x })?;
        }

        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(FiniteError::NotAssociative { a, b, c });
                    }
                }
            }
        }

        let mut group = FiniteGroup { order, table, identity, inverse, gens: Vec::new(), explicit_gens: false };
        group.gens = group.greedy_generators();
        Ok(group)
    }

    /// Like [`FiniteGroup::from_table`], recording an explicit generating set.
    pub fn from_table_with_gens(rows: Vec<Vec<usize>>, gens: Vec<usize>) -> Result<Self, FiniteError> {
        let mut group = Self::from_table(rows)?;
        if let Some(&g) = gens.iter().find(|&&g| g >= group.order) {
            return Err(FiniteError::GeneratorOutOfRange(g));
        }
        if group.closure(&gens).len() != group.order {
            return Err(FiniteError::GeneratorsIncomplete);
        }
        group.gens = gens;
        group.explicit_gens = true;
        Ok(group)
    }

    /// Closes a set of permutations (0-based image arrays) under composition.
    ///
    /// Element 0 is the identity, remaining elements are numbered in BFS
    /// order over the generators. The product `p*q` applies `q` first.
    pub fn from_perm_gens(perms: &[Vec<usize>]) -> Result<Self, FiniteError> {
        let degree = perms.first().map_or(0, Vec::len);
        for p in perms {
            if p.len() != degree {
                return Err(FiniteError::BadPermutation("generators have different degrees".into()));
            }
            let mut seen = vec![false; degree];
            for &x in p {
                if x >= degree || seen[x] {
                    return Err(FiniteError::BadPermutation(format!("{p:?} is not a permutation")));
                }
                seen[x] = true;
            }
        }
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&x| p[x]).collect() };

        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in perms {
                let next = compose(&elements[i], g);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        let rows: Vec<Vec<usize>> = elements
            .iter()
            .map(|p| elements.iter().map(|q| index[&compose(p, q)]).collect())
            .collect();
        let gens: Vec<usize> = perms.iter().map(|p| index[p]).collect();
        Self::from_table_with_gens(rows, gens)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table_with_gens(rows, if n == 1 { vec![] } else { vec![1] }).expect("cyclic table is a group")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Dihedral group of order `2n`; element `k + n*s` is `r^k s^s`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0);
        let decode = |x: usize| (x % n, x / n);
        let rows = (0..2 * n)
            .map(|x| {
                let (k1, s1) = decode(x);
                (0..2 * n)
                    .map(|y| {
                        let (k2, s2) = decode(y);
                        let k = if s1 == 0 { k1 + k2 } else { k1 + n - k2 } % n;
                        k + n * (s1 ^ s2)
                    })
                    .collect()
            })
            .collect();
        let gens = if n == 1 { vec![1] } else { vec![1 % n, n] };
        Self::from_table_with_gens(rows, gens).expect("dihedral table is a group")
    }

    /// Direct product; element `(a, b)` has index `a * |h| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let m = h.order;
        let rows = (0..g.order * m)
            .map(|x| (0..g.order * m).map(|y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m)).collect())
            .collect();
        let mut gens: Vec<usize> = g.gens.iter().map(|&a| a * m + h.identity).collect();
        gens.extend(h.gens.iter().map(|&b| g.identity * m + b));
        Self::from_table_with_gens(rows, gens).expect("product table is a group")
    }

    pub fn symmetric(n: usize) -> Self {
        if n <= 1 {
            return Self::trivial();
        }
        let mut gens = vec![(0..n).map(|i| (i + 1) % n).collect::<Vec<_>>()];
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        gens.push(swap);
        Self::from_perm_gens(&gens).expect("symmetric generators are permutations")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, n: i64) -> usize {
        let base = if n < 0 { self.inv(a) } else { a };
        let mut acc = self.identity;
        for _ in 0..n.unsigned_abs() % self.element_order(a) as u64 {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Generating set: the explicit one if supplied, otherwise a greedy
    /// choice in index order.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn has_explicit_generators(&self) -> bool {
        self.explicit_gens
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted closure of `set` under multiplication (always contains the
    /// identity).
    pub fn closure(&self, set: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut members = vec![self.identity];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in set {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }

    pub fn subgroup_generated(&self, set: &[usize]) -> FiniteSubgroup {
        FiniteSubgroup { members: self.closure(set) }
    }

    pub fn whole(&self) -> FiniteSubgroup {
        FiniteSubgroup { members: (0..self.order).collect() }
    }

    pub fn trivial_subgroup(&self) -> FiniteSubgroup {
        FiniteSubgroup { members: vec![self.identity] }
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = vec![self.identity];
        for x in 0..self.order {
            if current.binary_search(&x).is_err() {
                gens.push(x);
                current = self.closure(&gens);
            }
        }
        gens
    }

    /// Words over [`FiniteGroup::generators`] reaching every element, as a
    /// BFS parent table: `(parent, generator)` for each non-identity element.
    pub(crate) fn spanning_words(&self, gens: &[usize]) -> Vec<Option<(usize, usize)>> {
        let mut parent = vec![None; self.order];
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, g));
                    queue.push_back(y);
                }
            }
        }
        parent
    }
}

/// A subgroup, as a sorted list of element indices of its parent group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteSubgroup {
    members: Vec<usize>,
}

impl FiniteSubgroup {
    /// Checks closure, identity and inverses against `parent`.
    pub fn new(parent: &FiniteGroup, mut members: Vec<usize>) -> Result<Self, FiniteError> {
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&x| x >= parent.order()) || members.binary_search(&parent.identity()).is_err() {
            return Err(FiniteError::NotSubgroup);
        }
        for &a in &members {
            if members.binary_search(&parent.inv(a)).is_err() {
                return Err(FiniteError::NotSubgroup);
            }
            for &b in &members {
                if members.binary_search(&parent.mul(a, b)).is_err() {
                    return Err(FiniteError::NotSubgroup);
                }
            }
        }
        Ok(FiniteSubgroup { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &FiniteSubgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }
}

/// Every subgroup of `g`, sorted by `(size, members)`.
///
/// Subgroups are obtained as joins of cyclic subgroups, closing the family
/// under pairwise joins until it stabilises.
pub fn all_subgroups(g: &FiniteGroup, bound: usize) -> Result<Vec<FiniteSubgroup>, FiniteError> {
    if g.order() > bound {
        return Err(FiniteError::OrderBoundExceeded { order: g.order(), bound });
    }
    let cyclic: BTreeSet<Vec<usize>> = g.elements().map(|x| g.closure(&[x])).collect();
    let mut family: BTreeSet<Vec<usize>> = cyclic.clone();
    let mut frontier: Vec<Vec<usize>> = family.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for c in &cyclic {
                if c.iter().all(|x| h.binary_search(x).is_ok()) {
                    continue;
                }
                let mut gens = h.clone();
                gens.extend_from_slice(c);
                let join = g.closure(&gens);
                if family.insert(join.clone()) {
                    next.push(join);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<FiniteSubgroup> = family.into_iter().map(|members| FiniteSubgroup { members }).collect();
    out.sort_by(|a, b| (a.len(), &a.members).cmp(&(b.len(), &b.members)));
    Ok(out)
}

pub fn is_normal(g: &FiniteGroup, h: &FiniteSubgroup) -> bool {
    normality_witness(g, h).is_none()
}

fn normality_witness(g: &FiniteGroup, h: &FiniteSubgroup) -> Option<(usize, usize)> {
    for x in g.elements() {
        for &y in h.members() {
            if !h.contains(g.mul(g.mul(x, y), g.inv(x))) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Quotient by a normal subgroup. Cosets are numbered in increasing order of
/// their canonical representative (the least element index in the coset).
pub fn quotient(g: &Arc<FiniteGroup>, n: &FiniteSubgroup) -> Result<(Arc<FiniteGroup>, FiniteHom), FiniteError> {
    if let Some((g_, h)) = normality_witness(g, n) {
        return Err(FiniteError::NotNormal { g: g_, h });
    }
    let rep_of = |x: usize| n.members().iter().map(|&m| g.mul(x, m)).min().expect("subgroup is nonempty");
    let mut reps: Vec<usize> = g.elements().map(rep_of).collect::<BTreeSet<_>>().into_iter().collect();
    reps.sort_unstable();
    let index_of: HashMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let images: Vec<usize> = g.elements().map(|x| index_of[&rep_of(x)]).collect();
    let rows = reps.iter().map(|&a| reps.iter().map(|&b| images[g.mul(a, b)]).collect()).collect();
    let q = Arc::new(FiniteGroup::from_table(rows)?);
    let projection = FiniteHom::new(g.clone(), q.clone(), images)?;
    Ok((q, projection))
}

/// A homomorphism between finite groups, stored as its full image table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomProperties {
    pub injective: bool,
    pub kernel: FiniteSubgroup,
    pub image: FiniteSubgroup,
}

impl FiniteHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self, FiniteError> {
        if images.len() != source.order() {
            return Err(FiniteError::ImageCount { got: images.len(), expected: source.order() });
        }
        if let Some(&y) = images.iter().find(|&&y| y >= target.order()) {
            return Err(FiniteError::ImageOutOfRange(y));
        }
        for a in source.elements() {
            for b in source.elements() {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(FiniteError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(FiniteHom { source, target, images })
    }

    pub fn identity(g: Arc<FiniteGroup>) -> Self {
        let images = g.elements().collect();
        FiniteHom { source: g.clone(), target: g, images }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn properties(&self) -> HomProperties {
        let kernel: Vec<usize> = self.source.elements().filter(|&x| self.images[x] == self.target.identity()).collect();
        let image: BTreeSet<usize> = self.images.iter().copied().collect();
        HomProperties {
            injective: kernel.len() == 1,
            kernel: FiniteSubgroup { members: kernel },
            image: FiniteSubgroup { members: image.into_iter().collect() },
        }
    }

    pub fn is_injective(&self) -> bool {
        self.properties().injective
    }

    /// Preimage of a target element under an injective map.
    pub fn preimage(&self, y: usize) -> Option<usize> {
        self.images.iter().position(|&x| x == y)
    }
}

/// Least `m >= 1` with `alpha^m = id`.
pub fn automorphism_order(alpha: &FiniteHom) -> Result<usize, FiniteError> {
    if alpha.source != alpha.target || !alpha.is_injective() {
        return Err(FiniteError::NotAutomorphism);
    }
    Ok(permutation_order(alpha.images()))
}

pub(crate) fn permutation_order(perm: &[usize]) -> usize {
    let mut current: Vec<usize> = perm.to_vec();
    let mut m = 1;
    while current.iter().enumerate().any(|(i, &x)| i != x) {
        current = current.iter().map(|&x| perm[x]).collect();
        m += 1;
    }
    m
}
