//! Maps between groups: homomorphism checking, automorphism counting and
//! isomorphism testing by backtracking over generator images, and the
//! order-3 twist automorphism of a rank-2 homocyclic 2-group.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::kernel::{ElementId, Group};
use crate::structure::{center, conjugacy_classes, derived_subgroup, direct_product};

/// Default node budget for isomorphism search.
pub const DEFAULT_ISO_BUDGET: usize = 10_000_000;
/// Default node budget for automorphism-order counting.
pub const DEFAULT_AUT_BUDGET: usize = 100_000_000;

/// A map between two groups, as an image array indexed by source elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupMap {
    pub images: Vec<usize>,
}

impl GroupMap {
    pub fn identity(order: usize) -> Self {
        Self {
            images: (0..order).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: ElementId) -> ElementId {
        ElementId(self.images[x.0])
    }

    /// `(self . other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    /// Exhaustive homomorphism check: `images[xy] = images[x] images[y]`.
    pub fn is_homomorphism(&self, source: &Group, target: &Group) -> bool {
        if self.images.len() != source.order() || self.images[0] != 0 {
            return false;
        }
        if self.images.iter().any(|&i| i >= target.order()) {
            return false;
        }
        for x in source.elements() {
            for y in source.elements() {
                let lhs = self.images[source.mul(x, y).0];
                let rhs = target.mul(self.apply(x), self.apply(y)).0;
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_bijective(&self) -> bool {
        let n = self.images.len();
        let mut seen = vec![false; n];
        for &i in &self.images {
            if i >= n || seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }
}

/// Isomorphism-invariant fingerprint used to disqualify pairs cheaply and to
/// prune candidate generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: usize,
    pub order_stats: BTreeMap<usize, usize>,
    pub class_sizes: Vec<usize>,
    pub center_order: usize,
    pub derived_order: usize,
}

pub fn fingerprint(g: &Group) -> Fingerprint {
    let mut class_sizes: Vec<usize> = conjugacy_classes(g)
        .iter()
        .map(|c| c.members.len())
        .collect();
    class_sizes.sort_unstable();
    Fingerprint {
        order: g.order(),
        order_stats: g.order_statistics(),
        class_sizes,
        center_order: center(g).order(),
        derived_order: derived_subgroup(g).order(),
    }
}

/// Per-element invariant: (element order, conjugacy class size, class size of
/// the square). Generator images must match on all three.
fn element_profiles(g: &Group) -> Vec<(usize, usize, usize)> {
    let classes = conjugacy_classes(g);
    let mut class_size = vec![0usize; g.order()];
    for c in &classes {
        for &m in &c.members {
            class_size[m.0] = c.members.len();
        }
    }
    g.elements()
        .map(|x| {
            let sq = g.mul(x, x);
            (g.element_order(x), class_size[x.0], class_size[sq.0])
        })
        .collect()
}

struct ImageSearch<'a> {
    a: &'a Group,
    b: &'a Group,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    nodes: usize,
    budget: usize,
}

enum SearchOutcome {
    /// Count of complete bijective homomorphisms found.
    Count(usize),
    /// First witness found (search stops there).
    Witness(Vec<usize>),
    NoWitness,
}

impl<'a> ImageSearch<'a> {
    fn new(a: &'a Group, b: &'a Group, budget: usize) -> Self {
        let gens: Vec<usize> = a.generating_set().iter().map(|g| g.0).collect();
        let pa = element_profiles(a);
        let pb = element_profiles(b);
        let candidates = gens
            .iter()
            .map(|&g| (0..b.order()).filter(|&c| pb[c] == pa[g]).collect())
            .collect();
        Self {
            a,
            b,
            gens,
            candidates,
            nodes: 0,
            budget,
        }
    }

    /// Propagates the partial map generated by the assigned generator images.
    /// Returns the image array (usize::MAX where undefined) or None on any
    /// multiplicative conflict or collision.
    fn grow(&self, assigned: &[(usize, usize)]) -> Option<Vec<usize>> {
        const UNSET: usize = usize::MAX;
        let n = self.a.order();
        let mut img = vec![UNSET; n];
        let mut used = vec![false; self.b.order()];
        img[0] = 0;
        used[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &(g, ig) in assigned {
                let y = self.a.mul(ElementId(x), ElementId(g)).0;
                let iy = self.b.mul(ElementId(img[x]), ElementId(ig)).0;
                if img[y] != UNSET {
                    if img[y] != iy {
                        return None;
                    }
                } else {
                    if used[iy] {
                        return None;
                    }
                    img[y] = iy;
                    used[iy] = true;
                    queue.push_back(y);
                }
            }
        }
        Some(img)
    }

    fn run(&mut self, count_all: bool) -> Result<SearchOutcome> {
        let mut count = 0usize;
        let mut witness: Option<Vec<usize>> = None;
        let mut assigned: Vec<(usize, usize)> = Vec::new();
        self.recurse(0, &mut assigned, count_all, &mut count, &mut witness)?;
        Ok(if count_all {
            SearchOutcome::Count(count)
        } else if let Some(w) = witness {
            SearchOutcome::Witness(w)
        } else {
            SearchOutcome::NoWitness
        })
    }

    fn recurse(
        &mut self,
        level: usize,
        assigned: &mut Vec<(usize, usize)>,
        count_all: bool,
        count: &mut usize,
        witness: &mut Option<Vec<usize>>,
    ) -> Result<()> {
        if level == self.gens.len() {
            if let Some(img) = self.grow(assigned) {
                // the generators generate all of `a`, so the image array is
                // total, injective, and multiplicative: an isomorphism
                debug_assert!(img.iter().all(|&i| i != usize::MAX));
                *count += 1;
                if !count_all && witness.is_none() {
                    *witness = Some(img);
                }
            }
            return Ok(());
        }
        let g = self.gens[level];
        let cands = self.candidates[level].clone();
        for c in cands {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded { nodes: self.nodes });
            }
            assigned.push((g, c));
            if self.grow(assigned).is_some() {
                self.recurse(level + 1, assigned, count_all, count, witness)?;
            }
            assigned.pop();
            if !count_all && witness.is_some() {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// Exact `|Aut(g)|` by backtracking on images of a fixed generating set.
pub fn automorphism_group_order(g: &Group, budget: usize) -> Result<usize> {
    if g.order() == 1 {
        return Ok(1);
    }
    let mut search = ImageSearch::new(g, g, budget);
    match search.run(true)? {
        SearchOutcome::Count(c) => Ok(c),
        _ => unreachable!(),
    }
}

/// Isomorphism test with a witness map on success. Fingerprint inequality
/// short-circuits to `None` without searching.
pub fn are_isomorphic(a: &Group, b: &Group, budget: usize) -> Result<Option<GroupMap>> {
    if a.order() != b.order() {
        return Ok(None);
    }
    if a.order() == 1 {
        return Ok(Some(GroupMap::identity(1)));
    }
    if fingerprint(a) != fingerprint(b) {
        return Ok(None);
    }
    let mut search = ImageSearch::new(a, b, budget);
    match search.run(false)? {
        SearchOutcome::Witness(images) => {
            let map = GroupMap { images };
            debug_assert!(map.is_homomorphism(a, b) && map.is_bijective());
            Ok(Some(map))
        }
        SearchOutcome::NoWitness => Ok(None),
        SearchOutcome::Count(_) => unreachable!(),
    }
}

/// The order-3 automorphism `(a, b) -> (b, (ab)^-1)` of `C_{2^m} x C_{2^m}`,
/// together with its freshly built carrier. Pair `(i, j)` sits at index
/// `i * 2^m + j`, matching the direct-product layout.
pub fn make_gamma(m: u32, cap: usize) -> Result<(Group, GroupMap)> {
    assert!(m >= 1);
    let k = 1usize << m;
    let carrier = direct_product(&Group::cyclic(k), &Group::cyclic(k), cap)?;
    let mut images = vec![0usize; k * k];
    for i in 0..k {
        for j in 0..k {
            let neg = (2 * k - i - j) % k;
            images[i * k + j] = j * k + neg;
        }
    }
    let gamma = GroupMap { images };
    debug_assert!(gamma.is_homomorphism(&carrier, &carrier) && gamma.is_bijective());
    debug_assert_eq!(
        gamma.compose(&gamma).compose(&gamma),
        GroupMap::identity(k * k)
    );
    Ok((carrier, gamma))
}
