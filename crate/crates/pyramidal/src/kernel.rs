//! Element-level arithmetic: permutations, closure from generators, and
//! fully materialized multiplication tables.
//!
//! Groups at the scale this crate targets (orders up to a few thousand) are
//! stored as complete `order x order` tables so that every downstream
//! operation is plain index arithmetic. Element 0 is always the identity and
//! element discovery order is breadth-first over products in generator order,
//! so equal generator lists always produce bit-identical tables.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

/// Default ceiling on the number of elements a closure may reach.
pub const DEFAULT_CAP: usize = 20_000;

/// A permutation of `{0, .., degree-1}` stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation, rejecting image arrays that are not bijections.
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &i in &images {
            if i as usize >= d || seen[i as usize] {
                return Err(Error::NotBijective { degree: d });
            }
            seen[i as usize] = true;
        }
        Ok(Self { images })
    }

    pub fn from_usize(images: &[usize]) -> Result<Self> {
        Self::new(images.iter().map(|&i| i as u32).collect())
    }

    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `(self * other)(x) = self(other(x))`: `other` acts first.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }
}

/// Index of an element inside one particular [`Group`].
///
/// Ids are only meaningful relative to the group that produced them; using
/// one against another group is a contract violation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub usize);

impl std::fmt::Display for ElementId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The permutations underlying a group's elements, index-aligned with the
/// multiplication table. Derived groups (quotients, semidirect products)
/// carry no permutation data.
#[derive(Debug, Clone)]
pub struct PermRep {
    pub degree: usize,
    pub elements: Vec<Permutation>,
}

/// A finite group materialized as a full multiplication table.
#[derive(Debug, Clone)]
pub struct Group {
    order: usize,
    /// Row-major `order x order`: `table[i*order + j] = i * j` (row acts on the left).
    table: Vec<u32>,
    inverse: Vec<u32>,
    perms: Option<PermRep>,
}

impl Group {
    /// Closes a generator list into a full group, breadth-first over products
    /// in generator order. Fails with `CapExceeded` once more than `cap`
    /// elements are discovered, and `DegreeMismatch` if the generators do not
    /// share `degree`.
    pub fn from_generators(degree: usize, gens: &[Permutation], cap: usize) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }

        let identity = Permutation::identity(degree);
        let mut elements = vec![identity];
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        index.insert(elements[0].images.clone(), 0);
        // parent[j] = (i, slot): element j was first reached as elements[i] * gens[slot]
        let mut parent: Vec<(usize, usize)> = vec![(0, 0)];

        let mut i = 0;
        while i < elements.len() {
            for (slot, g) in gens.iter().enumerate() {
                let p = elements[i].compose(g);
                if !index.contains_key(p.images()) {
                    if elements.len() + 1 > cap {
                        return Err(Error::CapExceeded {
                            reached: elements.len() + 1,
                            cap,
                        });
                    }
                    index.insert(p.images.clone(), elements.len());
                    elements.push(p);
                    parent.push((i, slot));
                }
            }
            i += 1;
        }

        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for j in 0..n {
            table[j] = j as u32; // identity row
            table[j * n] = j as u32; // identity column
        }

        // Generator columns by direct composition, the rest by the recursion
        // i*(j'*g) = (i*j')*g over each element's discovery parent.
        let gen_elt: Vec<usize> = gens.iter().map(|g| index[g.images()]).collect();
        for (slot, &ge) in gen_elt.iter().enumerate() {
            if ge == 0 {
                continue;
            }
            for i in 0..n {
                let p = elements[i].compose(&gens[slot]);
                table[i * n + ge] = index[p.images()] as u32;
            }
        }
        for j in 1..n {
            if gen_elt.contains(&j) {
                continue;
            }
            let (pj, slot) = parent[j];
            let ge = gen_elt[slot];
            for i in 0..n {
                let ip = table[i * n + pj] as usize;
                table[i * n + j] = table[ip * n + ge];
            }
        }

        let group = Self::from_table_with_perms(n, table, Some(PermRep { degree, elements }));
        Ok(group)
    }

    /// Cyclic group of order `k` with its natural degree-`k` rotation labels.
    pub fn cyclic(k: usize) -> Self {
        assert!(k >= 1);
        let mut table = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                table[i * k + j] = ((i + j) % k) as u32;
            }
        }
        let rot: Vec<u32> = (0..k as u32).map(|x| (x + 1) % k as u32).collect();
        let rot = Permutation { images: rot };
        let mut elements = Vec::with_capacity(k);
        let mut cur = Permutation::identity(k);
        for _ in 0..k {
            elements.push(cur.clone());
            cur = cur.compose(&rot);
        }
        Self::from_table_with_perms(
            k,
            table,
            Some(PermRep {
                degree: k,
                elements,
            }),
        )
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Builds a group from an already assembled table. The table must have
    /// the identity at index 0; this is asserted along with the remaining
    /// group axioms in debug builds.
    pub(crate) fn from_table_with_perms(
        order: usize,
        table: Vec<u32>,
        perms: Option<PermRep>,
    ) -> Self {
        assert_eq!(table.len(), order * order);
        let mut inverse = vec![u32::MAX; order];
        for i in 0..order {
            for j in 0..order {
                if table[i * order + j] == 0 {
                    inverse[i] = j as u32;
                    break;
                }
            }
            assert_ne!(inverse[i], u32::MAX, "row {i} has no inverse");
        }
        let g = Self {
            order,
            table,
            inverse,
            perms,
        };
        #[cfg(debug_assertions)]
        g.validate_invariants();
        g
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> ElementId {
        ElementId(0)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.order).map(ElementId)
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.table[a.0 * self.order + b.0] as usize)
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        ElementId(self.inverse[a.0] as usize)
    }

    /// `a * b * a^-1`.
    #[inline]
    pub fn conjugate(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn power(&self, x: ElementId, k: usize) -> ElementId {
        let mut acc = ElementId(0);
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// Least `k >= 1` with `x^k = e`; always divides the group order.
    pub fn element_order(&self, x: ElementId) -> usize {
        let mut y = x;
        let mut k = 1;
        while y.0 != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Map from element order to the number of elements of that order.
    pub fn order_statistics(&self) -> BTreeMap<usize, usize> {
        let mut stats = BTreeMap::new();
        for x in self.elements() {
            *stats.entry(self.element_order(x)).or_insert(0) += 1;
        }
        stats
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.table[i * n + j] != self.table[j * n + i] {
                    return false;
                }
            }
        }
        true
    }

    pub fn perm_rep(&self) -> Option<&PermRep> {
        self.perms.as_ref()
    }

    /// Greedy generating set: scan elements by descending order (ties by
    /// ascending index) and keep those that enlarge the generated subgroup.
    pub fn generating_set(&self) -> Vec<ElementId> {
        if self.order == 1 {
            return Vec::new();
        }
        let mut by_order: Vec<usize> = (1..self.order).collect();
        by_order.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(ElementId(x))), x));

        let mut gens: Vec<ElementId> = Vec::new();
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut reached = vec![ElementId(0)];
        for x in by_order {
            if member[x] {
                continue;
            }
            gens.push(ElementId(x));
            // re-close from scratch over the enlarged generator list
            let mut i = 0;
            while i < reached.len() {
                for &g in &gens {
                    let t = self.mul(reached[i], g);
                    if !member[t.0] {
                        member[t.0] = true;
                        reached.push(t);
                    }
                }
                i += 1;
            }
            if reached.len() == self.order {
                break;
            }
        }
        gens
    }

    /// Degree-`order` regular representation of a generating set: generator
    /// `g` becomes the left-multiplication permutation `x -> g*x`.
    pub fn regular_generators(&self) -> (usize, Vec<Permutation>) {
        let n = self.order;
        let gens = self.generating_set();
        let perms = gens
            .iter()
            .map(|&g| Permutation {
                images: (0..n).map(|x| self.table[g.0 * n + x]).collect(),
            })
            .collect();
        (n, perms)
    }

    /// Generators to serialize: the underlying permutations of a generating
    /// set when the group carries them, otherwise the regular representation.
    pub fn serializable_generators(&self) -> (usize, Vec<Permutation>) {
        match &self.perms {
            Some(rep) => {
                let gens = self.generating_set();
                (
                    rep.degree,
                    gens.iter().map(|&g| rep.elements[g.0].clone()).collect(),
                )
            }
            None => self.regular_generators(),
        }
    }

    /// Group-axiom checks: identity row/column, Latin square, two-sided
    /// inverses, associativity (exhaustive up to order 512, sampled above).
    pub fn validate_invariants(&self) {
        let n = self.order;
        for j in 0..n {
            assert_eq!(self.table[j] as usize, j, "identity row broken at {j}");
            assert_eq!(
                self.table[j * n] as usize,
                j,
                "identity column broken at {j}"
            );
        }
        let mut seen_row = vec![false; n];
        let mut seen_col = vec![false; n];
        for i in 0..n {
            seen_row.iter_mut().for_each(|s| *s = false);
            seen_col.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let r = self.table[i * n + j] as usize;
                let c = self.table[j * n + i] as usize;
                assert!(!seen_row[r], "row {i} repeats {r}");
                assert!(!seen_col[c], "column {i} repeats {c}");
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        for i in 0..n {
            let li = self.inverse[i] as usize;
            assert_eq!(
                self.table[li * n + i],
                0,
                "left/right inverses differ at {i}"
            );
        }
        let check = |a: usize, b: usize, c: usize| {
            let ab_c = self.table[self.table[a * n + b] as usize * n + c];
            let a_bc = self.table[a * n + self.table[b * n + c] as usize];
            assert_eq!(ab_c, a_bc, "associativity fails at ({a},{b},{c})");
        };
        if n <= 512 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c);
                    }
                }
            }
        } else {
            // deterministic sample
            let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
            let mut next = move || {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                (state >> 17) as usize
            };
            for _ in 0..20_000 {
                check(next() % n, next() % n, next() % n);
            }
        }
    }
}

/// Two-adic valuation of `n`.
pub fn two_adic_valuation(n: usize) -> u32 {
    assert!(n > 0);
    n.trailing_zeros()
}
