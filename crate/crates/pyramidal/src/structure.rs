//! Subgroup-level machinery: generated subgroups, normality, centralizers,
//! conjugacy classes, quotients, products, Sylow subgroups, the derived
//! series, the odd core `O(G)`, and 2-length style series.
//!
//! All operations are pure reads over immutable groups; subgroup values are
//! membership snapshots tied to the group that produced them.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::kernel::{ElementId, Group, PermRep, Permutation};
use crate::maps::GroupMap;

/// A subgroup of some parent group, as a boolean membership vector over the
/// parent's element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupSet {
    members: Vec<bool>,
    size: usize,
}

impl SubgroupSet {
    pub(crate) fn from_membership(members: Vec<bool>) -> Self {
        let size = members.iter().filter(|&&m| m).count();
        Self { members, size }
    }

    pub fn trivial(parent_order: usize) -> Self {
        let mut members = vec![false; parent_order];
        members[0] = true;
        Self { members, size: 1 }
    }

    pub fn whole(parent_order: usize) -> Self {
        Self {
            members: vec![true; parent_order],
            size: parent_order,
        }
    }

    pub fn order(&self) -> usize {
        self.size
    }

    pub fn parent_order(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, x: ElementId) -> bool {
        self.members[x.0]
    }

    pub fn is_whole(&self) -> bool {
        self.size == self.members.len()
    }

    /// Member ids in ascending order.
    pub fn elements(&self) -> Vec<ElementId> {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(ElementId(i)))
            .collect()
    }

    /// Packed membership words, usable as a dedup key.
    pub fn key(&self) -> Vec<u64> {
        let mut words = vec![0u64; self.members.len().div_ceil(64)];
        for (i, &m) in self.members.iter().enumerate() {
            if m {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        words
    }

    pub fn is_subset_of(&self, other: &SubgroupSet) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }

    pub fn intersection(&self, other: &SubgroupSet) -> SubgroupSet {
        SubgroupSet::from_membership(
            self.members
                .iter()
                .zip(&other.members)
                .map(|(&a, &b)| a && b)
                .collect(),
        )
    }
}

/// One conjugacy class: the least member is the representative.
#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    pub representative: ElementId,
    pub members: Vec<ElementId>,
}

/// Smallest subgroup containing `seeds`. Finite groups close under plain
/// right multiplication by the seeds, so a breadth-first sweep suffices.
pub fn subgroup_generated(g: &Group, seeds: &[ElementId]) -> SubgroupSet {
    let mut members = vec![false; g.order()];
    members[0] = true;
    let mut list = vec![ElementId(0)];
    let mut i = 0;
    while i < list.len() {
        for &s in seeds {
            let t = g.mul(list[i], s);
            if !members[t.0] {
                members[t.0] = true;
                list.push(t);
            }
        }
        i += 1;
    }
    SubgroupSet::from_membership(members)
}

/// True iff `x h x^-1 = h` for every `x` in the parent. Checking all of `x`
/// is affordable at this scale.
pub fn is_normal(g: &Group, h: &SubgroupSet) -> bool {
    let hs = h.elements();
    for x in g.elements() {
        for &m in &hs {
            if !h.contains(g.conjugate(x, m)) {
                return false;
            }
        }
    }
    true
}

pub fn normalizer(g: &Group, h: &SubgroupSet) -> SubgroupSet {
    let hs = h.elements();
    let mut members = vec![false; g.order()];
    'outer: for x in g.elements() {
        for &m in &hs {
            if !h.contains(g.conjugate(x, m)) {
                continue 'outer;
            }
        }
        members[x.0] = true;
    }
    SubgroupSet::from_membership(members)
}

/// `{x : xy = yx for all y in h}`.
pub fn centralizer(g: &Group, h: &SubgroupSet) -> SubgroupSet {
    let hs = h.elements();
    let mut members = vec![false; g.order()];
    'outer: for x in g.elements() {
        for &y in &hs {
            if g.mul(x, y) != g.mul(y, x) {
                continue 'outer;
            }
        }
        members[x.0] = true;
    }
    SubgroupSet::from_membership(members)
}

pub fn center(g: &Group) -> SubgroupSet {
    centralizer(g, &SubgroupSet::whole(g.order()))
}

/// Conjugacy class of a single element.
pub fn conjugacy_class_of(g: &Group, x: ElementId) -> Vec<ElementId> {
    let mut seen = vec![false; g.order()];
    seen[x.0] = true;
    let mut members = vec![x];
    for y in g.elements() {
        let c = g.conjugate(y, x);
        if !seen[c.0] {
            seen[c.0] = true;
            members.push(c);
        }
    }
    members.sort();
    members
}

/// All conjugacy classes, ordered by least representative index.
pub fn conjugacy_classes(g: &Group) -> Vec<ConjugacyClass> {
    let mut assigned = vec![false; g.order()];
    let mut classes = Vec::new();
    for x in g.elements() {
        if assigned[x.0] {
            continue;
        }
        let members = conjugacy_class_of(g, x);
        for &m in &members {
            assigned[m.0] = true;
        }
        classes.push(ConjugacyClass {
            representative: x,
            members,
        });
    }
    classes
}

/// Smallest normal subgroup containing `seeds`: the subgroup generated by
/// every conjugate of every seed.
pub fn normal_closure(g: &Group, seeds: &[ElementId]) -> SubgroupSet {
    let mut conj_seeds = Vec::new();
    let mut seen = vec![false; g.order()];
    for &s in seeds {
        for x in g.elements() {
            let c = g.conjugate(x, s);
            if !seen[c.0] {
                seen[c.0] = true;
                conj_seeds.push(c);
            }
        }
    }
    subgroup_generated(g, &conj_seeds)
}

/// Largest normal subgroup whose element orders and total order satisfy
/// `accept`: the join of the normal closures of all accepted elements.
fn largest_normal_where(
    g: &Group,
    element_ok: impl Fn(usize) -> bool,
    order_ok: impl Fn(usize) -> bool,
) -> SubgroupSet {
    let mut acc = SubgroupSet::trivial(g.order());
    let mut seeds: Vec<ElementId> = Vec::new();
    for x in g.elements() {
        if x.0 == 0 || acc.contains(x) || !element_ok(g.element_order(x)) {
            continue;
        }
        let nc = normal_closure(g, &[x]);
        if order_ok(nc.order()) {
            seeds.push(x);
            acc = normal_closure(g, &seeds);
            debug_assert!(order_ok(acc.order()));
        }
    }
    acc
}

/// `O(G)`: the largest normal subgroup of odd order.
pub fn odd_core(g: &Group) -> SubgroupSet {
    largest_normal_where(g, |o| o % 2 == 1, |n| n % 2 == 1)
}

fn p_part(mut n: usize, p: usize) -> usize {
    let mut q = 1;
    while n % p == 0 {
        n /= p;
        q *= p;
    }
    q
}

fn is_p_power(n: usize, p: usize) -> bool {
    p_part(n, p) == n
}

/// Largest normal p-subgroup.
pub fn largest_normal_p_subgroup(g: &Group, p: usize) -> SubgroupSet {
    largest_normal_where(g, |o| is_p_power(o, p), |n| is_p_power(n, p))
}

/// Largest normal subgroup of order coprime to `p`.
pub fn largest_normal_p_prime_subgroup(g: &Group, p: usize) -> SubgroupSet {
    largest_normal_where(g, |o| o % p != 0, |n| n % p != 0)
}

/// Quotient by a normal subgroup, as a fresh group on coset representatives
/// (each coset labeled by its least element index), plus the projection map.
pub fn quotient(g: &Group, n: &SubgroupSet) -> Result<(Group, GroupMap)> {
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let order = g.order();
    let ns = n.elements();
    let mut rep_of = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for x in g.elements() {
        if rep_of[x.0] != usize::MAX {
            continue;
        }
        // x's coset: least member is x itself, because smaller indices
        // already have reps assigned and cosets partition the group
        let mut coset: Vec<usize> = ns.iter().map(|&k| g.mul(x, k).0).collect();
        coset.sort_unstable();
        debug_assert_eq!(coset[0], x.0);
        for &m in &coset {
            rep_of[m] = x.0;
        }
        reps.push(x.0);
    }
    let q_order = reps.len();
    let mut new_index = vec![usize::MAX; order];
    for (qi, &r) in reps.iter().enumerate() {
        new_index[r] = qi;
    }
    let mut table = vec![0u32; q_order * q_order];
    for (a, &ra) in reps.iter().enumerate() {
        for (b, &rb) in reps.iter().enumerate() {
            let prod = g.mul(ElementId(ra), ElementId(rb));
            table[a * q_order + b] = new_index[rep_of[prod.0]] as u32;
        }
    }
    let q = Group::from_table_with_perms(q_order, table, None);
    let images = (0..order).map(|x| new_index[rep_of[x]]).collect();
    Ok((q, GroupMap { images }))
}

/// Direct product on pairs in lexicographic order (`a` major).
pub fn direct_product(a: &Group, b: &Group, cap: usize) -> Result<Group> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    if n > cap {
        return Err(Error::CapExceeded { reached: n, cap });
    }
    let mut table = vec![0u32; n * n];
    for i1 in 0..na {
        for j1 in 0..nb {
            let x = i1 * nb + j1;
            for i2 in 0..na {
                for j2 in 0..nb {
                    let y = i2 * nb + j2;
                    let pi = a.mul(ElementId(i1), ElementId(i2)).0;
                    let pj = b.mul(ElementId(j1), ElementId(j2)).0;
                    table[x * n + y] = (pi * nb + pj) as u32;
                }
            }
        }
    }
    let perms = match (a.perm_rep(), b.perm_rep()) {
        (Some(ra), Some(rb)) => {
            let degree = ra.degree + rb.degree;
            let mut elements = Vec::with_capacity(n);
            for i in 0..na {
                for j in 0..nb {
                    let mut images: Vec<u32> = ra.elements[i].images().to_vec();
                    images.extend(
                        rb.elements[j]
                            .images()
                            .iter()
                            .map(|&x| x + ra.degree as u32),
                    );
                    elements.push(Permutation::new(images).expect("block permutation"));
                }
            }
            Some(PermRep { degree, elements })
        }
        _ => None,
    };
    Ok(Group::from_table_with_perms(n, table, perms))
}

/// Semidirect product `n x| a` for an action given as one automorphism image
/// array per element of `a`. The action is validated exhaustively: every
/// image must be an automorphism of `n` and the assignment a homomorphism.
/// Pairs `(x, y)` multiply as `(x1, y1)(x2, y2) = (x1 * y1(x2), y1 y2)`.
pub fn semidirect_product(
    n: &Group,
    a: &Group,
    action: &[Vec<usize>],
    cap: usize,
) -> Result<Group> {
    let (nn, na) = (n.order(), a.order());
    assert_eq!(action.len(), na, "one action image per acting element");
    for (idx, img) in action.iter().enumerate() {
        if img.len() != nn || img[0] != 0 {
            return Err(Error::ActionNotAutomorphism { index: idx });
        }
        let mut seen = vec![false; nn];
        for &v in img {
            if v >= nn || seen[v] {
                return Err(Error::ActionNotAutomorphism { index: idx });
            }
            seen[v] = true;
        }
        for x in 0..nn {
            for y in 0..nn {
                let lhs = img[n.mul(ElementId(x), ElementId(y)).0];
                let rhs = n.mul(ElementId(img[x]), ElementId(img[y])).0;
                if lhs != rhs {
                    return Err(Error::ActionNotAutomorphism { index: idx });
                }
            }
        }
    }
    for (y1, img1) in action.iter().enumerate() {
        for (y2, img2) in action.iter().enumerate() {
            let prod = a.mul(ElementId(y1), ElementId(y2)).0;
            for x in 0..nn {
                if action[prod][x] != img1[img2[x]] {
                    return Err(Error::ActionNotHomomorphism);
                }
            }
        }
    }

    let total = nn * na;
    if total > cap {
        return Err(Error::CapExceeded {
            reached: total,
            cap,
        });
    }
    let mut table = vec![0u32; total * total];
    for x1 in 0..nn {
        for (y1, img1) in action.iter().enumerate() {
            let e1 = x1 * na + y1;
            for (x2, &twisted) in img1.iter().enumerate() {
                for y2 in 0..na {
                    let e2 = x2 * na + y2;
                    let nx = n.mul(ElementId(x1), ElementId(twisted)).0;
                    let ny = a.mul(ElementId(y1), ElementId(y2)).0;
                    table[e1 * total + e2] = (nx * na + ny) as u32;
                }
            }
        }
    }
    Ok(Group::from_table_with_perms(total, table, None))
}

/// A Sylow p-subgroup: grow a maximal-order p-element's cyclic subgroup by
/// p-elements of its normalizer until the full p-part is reached.
pub fn sylow_subgroup(g: &Group, p: usize) -> SubgroupSet {
    let target = p_part(g.order(), p);
    if target == 1 {
        return SubgroupSet::trivial(g.order());
    }
    // seed: p-part of the element with the largest p-power order
    let mut best_order = 1;
    let mut seed = ElementId(0);
    for x in g.elements() {
        let o = g.element_order(x);
        let pp = p_part(o, p);
        if pp > best_order {
            best_order = pp;
            seed = g.power(x, o / pp); // order exactly pp
        }
    }
    assert!(
        best_order > 1,
        "Cauchy: p divides the order, so a p-element exists"
    );
    let mut gens = vec![seed];
    let mut sub = subgroup_generated(g, &gens);
    while sub.order() < target {
        let norm = normalizer(g, &sub);
        let mut grew = false;
        for y in norm.elements() {
            if sub.contains(y) {
                continue;
            }
            let o = g.element_order(y);
            let pp = p_part(o, p);
            if pp == 1 {
                continue;
            }
            let z = g.power(y, o / pp);
            if !sub.contains(z) {
                gens.push(z);
                sub = subgroup_generated(g, &gens);
                grew = true;
                break;
            }
        }
        assert!(grew, "normalizer growth stalled below the full p-part");
    }
    debug_assert_eq!(sub.order(), target);
    sub
}

/// Derived subgroup of a subgroup: closure of all commutators of its members.
pub fn derived_of(g: &Group, h: &SubgroupSet) -> SubgroupSet {
    let hs = h.elements();
    let mut seen = vec![false; g.order()];
    let mut comms = Vec::new();
    for &x in &hs {
        for &y in &hs {
            let c = g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y)));
            if !seen[c.0] {
                seen[c.0] = true;
                comms.push(c);
            }
        }
    }
    subgroup_generated(g, &comms)
}

pub fn derived_subgroup(g: &Group) -> SubgroupSet {
    derived_of(g, &SubgroupSet::whole(g.order()))
}

/// True iff the derived series reaches the trivial subgroup.
pub fn is_solvable(g: &Group) -> bool {
    let mut cur = SubgroupSet::whole(g.order());
    loop {
        let next = derived_of(g, &cur);
        if next.order() == 1 {
            return true;
        }
        if next.order() == cur.order() {
            return false;
        }
        cur = next;
    }
}

/// Length of the upper p-series: alternately strip the largest normal
/// p'-subgroup and the largest normal p-subgroup, counting the p-steps.
pub fn p_length(g: &Group, p: usize) -> Result<usize> {
    if !is_solvable(g) {
        return Err(Error::NotSolvable);
    }
    let mut current = g.clone();
    let mut len = 0;
    loop {
        let coprime = largest_normal_p_prime_subgroup(&current, p);
        let (after, _) = quotient(&current, &coprime).expect("normal by construction");
        if after.order() == 1 {
            return Ok(len);
        }
        let p_core = largest_normal_p_subgroup(&after, p);
        assert!(
            p_core.order() > 1,
            "solvable group with trivial Fitting subgroup"
        );
        len += 1;
        let (next, _) = quotient(&after, &p_core).expect("normal by construction");
        if next.order() == 1 {
            return Ok(len);
        }
        current = next;
    }
}

/// Invariant-factor type of an abelian 2-group subgroup, recovered from the
/// counts of elements of each order: `f(k) = log2 #{x : x^(2^k) = e}` and the
/// conjugate partition of its increments.
pub fn abelian_two_group_type(g: &Group, h: &SubgroupSet) -> Result<Vec<usize>> {
    let hs = h.elements();
    for (i, &x) in hs.iter().enumerate() {
        for &y in &hs[i + 1..] {
            if g.mul(x, y) != g.mul(y, x) {
                return Err(Error::NotAbelian);
            }
        }
    }
    if !hs.len().is_power_of_two() {
        return Err(Error::Not2Group);
    }
    let orders: Vec<usize> = hs.iter().map(|&x| g.element_order(x)).collect();
    if orders.iter().any(|o| !o.is_power_of_two()) {
        return Err(Error::Not2Group);
    }
    let total_log = hs.len().trailing_zeros() as usize;
    // m[k] = number of invariant factors of order >= 2^k
    let mut m = Vec::new();
    let mut prev_log = 0usize;
    for k in 1.. {
        let bound = 1usize << k;
        let count = orders.iter().filter(|&&o| o <= bound).count();
        assert!(
            count.is_power_of_two(),
            "order-dividing counts in an abelian p-group"
        );
        let log = count.trailing_zeros() as usize;
        m.push(log - prev_log);
        prev_log = log;
        if log == total_log {
            break;
        }
    }
    let rank = m[0];
    let mut factors = Vec::with_capacity(rank);
    for i in 1..=rank {
        let lambda = m.iter().filter(|&&mk| mk >= i).count();
        factors.push(1usize << lambda);
    }
    debug_assert_eq!(factors.iter().product::<usize>(), hs.len());
    Ok(factors)
}

/// Re-index a subgroup as a standalone group; returns the new group together
/// with the member ids it was built from (new index -> parent id).
pub fn subgroup_to_group(g: &Group, h: &SubgroupSet) -> (Group, Vec<ElementId>) {
    let members = h.elements();
    let k = members.len();
    let mut new_index = vec![usize::MAX; g.order()];
    for (ni, &m) in members.iter().enumerate() {
        new_index[m.0] = ni;
    }
    let mut table = vec![0u32; k * k];
    for (a, &ma) in members.iter().enumerate() {
        for (b, &mb) in members.iter().enumerate() {
            let p = g.mul(ma, mb);
            debug_assert!(new_index[p.0] != usize::MAX, "membership not closed");
            table[a * k + b] = new_index[p.0] as u32;
        }
    }
    let perms = g.perm_rep().map(|rep| PermRep {
        degree: rep.degree,
        elements: members.iter().map(|&m| rep.elements[m.0].clone()).collect(),
    });
    (Group::from_table_with_perms(k, table, perms), members)
}

/// Every subgroup, by repeatedly extending known subgroups one generator at a
/// time. Exponential in general; intended for parents of order <= ~200.
pub fn enumerate_subgroups(g: &Group) -> Vec<SubgroupSet> {
    struct Node {
        set: SubgroupSet,
        gens: Vec<ElementId>,
    }
    let trivial = SubgroupSet::trivial(g.order());
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(trivial.key());
    let mut list = vec![Node {
        set: trivial,
        gens: Vec::new(),
    }];
    let mut i = 0;
    while i < list.len() {
        for x in g.elements() {
            if list[i].set.contains(x) {
                continue;
            }
            let mut gens = list[i].gens.clone();
            gens.push(x);
            let set = subgroup_generated(g, &gens);
            if seen.insert(set.key()) {
                list.push(Node { set, gens });
            }
        }
        i += 1;
    }
    let mut out: Vec<SubgroupSet> = list.into_iter().map(|n| n.set).collect();
    out.sort_by_key(|s| (s.order(), s.key()));
    out
}

/// Every normal subgroup, by closing upward with conjugacy-class
/// representatives. Cheap compared to full subgroup enumeration.
pub fn enumerate_normal_subgroups(g: &Group) -> Vec<SubgroupSet> {
    let class_reps: Vec<ElementId> = conjugacy_classes(g)
        .into_iter()
        .map(|c| c.representative)
        .collect();
    struct Node {
        set: SubgroupSet,
        gens: Vec<ElementId>,
    }
    let trivial = SubgroupSet::trivial(g.order());
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(trivial.key());
    let mut list = vec![Node {
        set: trivial,
        gens: Vec::new(),
    }];
    let mut i = 0;
    while i < list.len() {
        for &r in &class_reps {
            if list[i].set.contains(r) {
                continue;
            }
            let mut gens = list[i].gens.clone();
            gens.push(r);
            let set = normal_closure(g, &gens);
            if seen.insert(set.key()) {
                list.push(Node { set, gens });
            }
        }
        i += 1;
    }
    let mut out: Vec<SubgroupSet> = list.into_iter().map(|n| n.set).collect();
    out.sort_by_key(|s| (s.order(), s.key()));
    out
}

/// A complement to a normal subgroup: a subgroup of complementary order
/// meeting it trivially. Tries cyclic complements first, then (for small
/// parents) the full subgroup enumeration.
pub fn find_complement(g: &Group, n: &SubgroupSet) -> Option<SubgroupSet> {
    let k = g.order() / n.order();
    if k == 1 {
        return Some(SubgroupSet::trivial(g.order()));
    }
    for x in g.elements() {
        if g.element_order(x) == k {
            let c = subgroup_generated(g, &[x]);
            if c.order() == k && c.intersection(n).order() == 1 {
                return Some(c);
            }
        }
    }
    if g.order() <= 200 {
        for c in enumerate_subgroups(g) {
            if c.order() == k && c.intersection(n).order() == 1 {
                return Some(c);
            }
        }
    }
    None
}
