//! Constructors for the realizable 3-pyramidal families, embedded reference
//! groups, and the deterministic corpus used for differential testing.
//!
//! Reference groups ship as `permgroup/v1` generator data produced once by
//! an external computer-algebra construction; nothing is trusted from that
//! data beyond what the load-time invariant checks verify.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::PermGroupFile;
use crate::kernel::{ElementId, Group, Permutation, DEFAULT_CAP};
use crate::maps::{make_gamma, GroupMap};
use crate::pyramidal::is_3_pyramidal_definition;
use crate::structure::{
    center, derived_of, direct_product, is_normal, odd_core, quotient, semidirect_product,
    subgroup_generated, subgroup_to_group, sylow_subgroup, SubgroupSet,
};

pub const CORPUS_FORMAT: &str = "corpus/v1";

/// Serializable description of a group: explicit permutation generators, a
/// family constructor with parameters, or a named reference group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupSpec {
    Perm {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Cyclic {
        k: usize,
    },
    DirectProd {
        specs: Vec<GroupSpec>,
    },
    SemidirectProd {
        n: Box<GroupSpec>,
        a: Box<GroupSpec>,
        action: ActionId,
    },
    Family(FamilySpec),
    Reference {
        name: ReferenceName,
    },
}

/// Named actions available to `SemidirectProd` specs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionId {
    Trivial,
    /// `(a, b) -> (b, (ab)^-1)` on a rank-2 homocyclic 2-group, with a
    /// cyclic acting group of order divisible by 3.
    Gamma,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", content = "params", rename_all = "snake_case")]
pub enum FamilySpec {
    S3TimesH {
        h: Box<GroupSpec>,
    },
    Homocyclic {
        n: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        y: Option<Box<GroupSpec>>,
    },
    Suzuki64 {
        a_order: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceName {
    Suzuki64,
    Suzuki64SemidirectC3,
    Suzuki64SemidirectC15,
    NonnormalSylowExample,
}

impl ReferenceName {
    pub const ALL: [ReferenceName; 4] = [
        ReferenceName::Suzuki64,
        ReferenceName::Suzuki64SemidirectC3,
        ReferenceName::Suzuki64SemidirectC15,
        ReferenceName::NonnormalSylowExample,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ReferenceName::Suzuki64 => "suzuki64",
            ReferenceName::Suzuki64SemidirectC3 => "suzuki64_semidirect_c3",
            ReferenceName::Suzuki64SemidirectC15 => "suzuki64_semidirect_c15",
            ReferenceName::NonnormalSylowExample => "nonnormal_sylow_example",
        }
    }

    fn data(&self) -> &'static str {
        match self {
            ReferenceName::Suzuki64 => include_str!("../data/suzuki64.json"),
            ReferenceName::Suzuki64SemidirectC3 => {
                include_str!("../data/suzuki64_semidirect_c3.json")
            }
            ReferenceName::Suzuki64SemidirectC15 => {
                include_str!("../data/suzuki64_semidirect_c15.json")
            }
            ReferenceName::NonnormalSylowExample => {
                include_str!("../data/nonnormal_sylow_example.json")
            }
        }
    }
}

impl std::str::FromStr for ReferenceName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ReferenceName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::ReferenceDataMissing {
                name: s.to_string(),
                detail: "unknown reference name".to_string(),
            })
    }
}

/// Builds the group a spec describes. Deterministic: equal specs resolve to
/// identical groups.
pub fn resolve(spec: &GroupSpec, cap: usize) -> Result<Group> {
    match spec {
        GroupSpec::Perm { degree, generators } => {
            let gens = generators
                .iter()
                .map(|im| {
                    if im.len() != *degree {
                        return Err(Error::DegreeMismatch {
                            expected: *degree,
                            got: im.len(),
                        });
                    }
                    Permutation::from_usize(im)
                })
                .collect::<Result<Vec<_>>>()?;
            Group::from_generators(*degree, &gens, cap)
        }
        GroupSpec::Cyclic { k } => {
            if *k > cap {
                return Err(Error::CapExceeded { reached: *k, cap });
            }
            Ok(Group::cyclic(*k))
        }
        GroupSpec::DirectProd { specs } => {
            let mut acc = Group::trivial();
            for s in specs {
                let g = resolve(s, cap)?;
                acc = direct_product(&acc, &g, cap)?;
            }
            Ok(acc)
        }
        GroupSpec::SemidirectProd { n, a, action } => {
            let ng = resolve(n, cap)?;
            let ag = resolve(a, cap)?;
            let arrays = build_action(*action, n, &ng, a, &ag)?;
            semidirect_product(&ng, &ag, &arrays, cap)
        }
        GroupSpec::Family(f) => match f {
            FamilySpec::S3TimesH { h } => make_s3_times_h(h, cap),
            FamilySpec::Homocyclic { n, y } => make_homocyclic_family(*n, y.as_deref(), None, cap),
            FamilySpec::Suzuki64 { a_order } => make_suzuki64_family(*a_order),
        },
        GroupSpec::Reference { name } => load_reference(*name),
    }
}

fn build_action(
    action: ActionId,
    n_spec: &GroupSpec,
    ng: &Group,
    a_spec: &GroupSpec,
    ag: &Group,
) -> Result<Vec<Vec<usize>>> {
    match action {
        ActionId::Trivial => {
            let id: Vec<usize> = (0..ng.order()).collect();
            Ok(vec![id; ag.order()])
        }
        ActionId::Gamma => {
            let k = match n_spec {
                GroupSpec::DirectProd { specs } => match specs.as_slice() {
                    [GroupSpec::Cyclic { k: k1 }, GroupSpec::Cyclic { k: k2 }]
                        if k1 == k2 && k1.is_power_of_two() && *k1 >= 2 =>
                    {
                        *k1
                    }
                    _ => {
                        return Err(Error::UnsupportedAction(
                            "gamma needs a direct product of two equal cyclic 2-groups".to_string(),
                        ))
                    }
                },
                _ => {
                    return Err(Error::UnsupportedAction(
                        "gamma needs a direct product of two equal cyclic 2-groups".to_string(),
                    ))
                }
            };
            let cyc = match a_spec {
                GroupSpec::Cyclic { k } if k % 3 == 0 => *k,
                _ => {
                    return Err(Error::UnsupportedAction(
                        "gamma needs a cyclic acting group of order divisible by 3".to_string(),
                    ))
                }
            };
            let gamma = gamma_images(k);
            let id: Vec<usize> = (0..ng.order()).collect();
            let g2: Vec<usize> = gamma.iter().map(|&x| gamma[x]).collect();
            let powers = [id, gamma, g2];
            Ok((0..cyc).map(|j| powers[j % 3].clone()).collect())
        }
    }
}

/// `(i, j) -> (j, -(i+j))` on pair indices `i*k + j`.
fn gamma_images(k: usize) -> Vec<usize> {
    let mut images = vec![0usize; k * k];
    for i in 0..k {
        for j in 0..k {
            images[i * k + j] = j * k + (2 * k - i - j) % k;
        }
    }
    images
}

/// `S3` on three points.
pub fn s3() -> Group {
    let gens = [
        Permutation::from_usize(&[1, 0, 2]).unwrap(),
        Permutation::from_usize(&[0, 2, 1]).unwrap(),
    ];
    Group::from_generators(3, &gens, DEFAULT_CAP).expect("six elements")
}

/// `S3 x H` for odd-order `H`: the split family.
pub fn make_s3_times_h(h_spec: &GroupSpec, cap: usize) -> Result<Group> {
    let h = resolve(h_spec, cap)?;
    if h.order() % 2 == 0 {
        return Err(Error::EvenOrderH { order: h.order() });
    }
    direct_product(&s3(), &h, cap)
}

/// `(C_{2^n} x C_{2^n}) x| Y` for odd `Y` acting through an index-3 normal
/// subgroup `X`: `Y -> Y/X = C3 -> <gamma>`. The default `Y` is `C3` with
/// trivial `X`. The odd core of the result is exactly the embedded copy of
/// `X`.
pub fn make_homocyclic_family(
    n: u32,
    y_spec: Option<&GroupSpec>,
    x_witness: Option<&[usize]>,
    cap: usize,
) -> Result<Group> {
    let (carrier, gamma) = make_gamma(n, cap)?;
    let y = match y_spec {
        Some(s) => resolve(s, cap)?,
        None => Group::cyclic(3),
    };
    if y.order() % 2 == 0 {
        return Err(Error::EvenOrderY { order: y.order() });
    }
    let x = match x_witness {
        Some(seeds) => {
            let ids: Vec<ElementId> = seeds.iter().map(|&s| ElementId(s)).collect();
            let set = subgroup_generated(&y, &ids);
            if set.order() * 3 != y.order() || !is_normal(&y, &set) {
                return Err(Error::NoIndex3NormalSubgroup { order: y.order() });
            }
            set
        }
        None => find_index3_normal(&y)?,
    };

    // exponent map t: Y -> {0, 1, 2} through Y/X
    let (q3, proj) = quotient(&y, &x).expect("verified normal");
    debug_assert_eq!(q3.order(), 3);
    let q_gen = ElementId(1);
    let q_gen_sq = q3.mul(q_gen, q_gen);
    let id = GroupMap::identity(carrier.order());
    let gamma_sq = gamma.compose(&gamma);
    let powers = [&id, &gamma, &gamma_sq];
    let action: Vec<Vec<usize>> = y
        .elements()
        .map(|yy| {
            let im = proj.apply(yy);
            let t = if im.0 == 0 {
                0
            } else if im == q_gen {
                1
            } else {
                debug_assert_eq!(im, q_gen_sq);
                2
            };
            powers[t].images.clone()
        })
        .collect();
    let g = semidirect_product(&carrier, &y, &action, cap)?;

    #[cfg(debug_assertions)]
    {
        // the embedded X (pairs (identity, x)) must be the whole odd core
        let oc = odd_core(&g);
        assert_eq!(oc.order(), x.order());
        for e in x.elements() {
            assert!(oc.contains(ElementId(e.0)));
        }
    }
    Ok(g)
}

/// First normal index-3 subgroup found among subgroups generated by up to
/// three elements, scanned in index order.
fn find_index3_normal(y: &Group) -> Result<SubgroupSet> {
    let fail = Error::NoIndex3NormalSubgroup { order: y.order() };
    if y.order() % 3 != 0 {
        return Err(fail);
    }
    let target = y.order() / 3;
    let n = y.order();
    let check = |seeds: &[ElementId]| -> Option<SubgroupSet> {
        let set = subgroup_generated(y, seeds);
        (set.order() == target && is_normal(y, &set)).then_some(set)
    };
    if target == 1 {
        return Ok(SubgroupSet::trivial(n));
    }
    for i in 0..n {
        if let Some(s) = check(&[ElementId(i)]) {
            return Ok(s);
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if let Some(s) = check(&[ElementId(i), ElementId(j)]) {
                return Ok(s);
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for l in (j + 1)..n {
                if let Some(s) = check(&[ElementId(i), ElementId(j), ElementId(l)]) {
                    return Ok(s);
                }
            }
        }
    }
    Err(fail)
}

/// The order-64 Suzuki group extended by a complement of order 3 or 15,
/// from validated reference data.
pub fn make_suzuki64_family(a_order: usize) -> Result<Group> {
    match a_order {
        3 => load_reference(ReferenceName::Suzuki64SemidirectC3),
        15 => load_reference(ReferenceName::Suzuki64SemidirectC15),
        got => Err(Error::InvalidAOrder { got }),
    }
}

/// Loads and validates one of the embedded reference groups. Validation is
/// total: a group that fails any named check is never returned.
pub fn load_reference(name: ReferenceName) -> Result<Group> {
    load_reference_from_str(name, name.data())
}

/// Same as [`load_reference`] but over caller-supplied text, so corrupted
/// data paths stay testable.
pub fn load_reference_from_str(name: ReferenceName, text: &str) -> Result<Group> {
    let missing = |detail: String| Error::ReferenceDataMissing {
        name: name.as_str().to_string(),
        detail,
    };
    let file = PermGroupFile::from_json(text).map_err(|e| missing(e.to_string()))?;
    let g = file
        .build(DEFAULT_CAP)
        .map_err(|e| missing(e.to_string()))?;
    validate_reference(name, &g)?;
    Ok(g)
}

fn validate_reference(name: ReferenceName, g: &Group) -> Result<()> {
    let fail = |check: &str| {
        Err(Error::ValidationFailed {
            name: name.as_str().to_string(),
            check: check.to_string(),
        })
    };
    let involution_count = g
        .elements()
        .filter(|&x| x.0 != 0 && g.mul(x, x).0 == 0)
        .count();
    match name {
        ReferenceName::Suzuki64 => {
            if g.order() != 64 {
                return fail("order 64");
            }
            if g.is_abelian() {
                return fail("nonabelian");
            }
            if involution_count != 3 {
                return fail("exactly 3 involutions");
            }
            let z = center(g);
            if z.order() != 4 {
                return fail("center of order 4");
            }
            let derived = derived_of(g, &SubgroupSet::whole(g.order()));
            if derived != z {
                return fail("center equals derived subgroup");
            }
            let (q, _) = quotient(g, &z).expect("center is normal");
            if q.order() != 16 || q.elements().any(|x| x.0 != 0 && q.element_order(x) != 2) {
                return fail("central quotient elementary abelian of order 16");
            }
        }
        ReferenceName::Suzuki64SemidirectC3 | ReferenceName::Suzuki64SemidirectC15 => {
            let want = if name == ReferenceName::Suzuki64SemidirectC3 {
                192
            } else {
                960
            };
            if g.order() != want {
                return fail("expected order");
            }
            if !is_3_pyramidal_definition(g) {
                return fail("three conjugate involutions");
            }
            let syl = sylow_subgroup(g, 2);
            if syl.order() != 64 {
                return fail("Sylow 2-subgroup of order 64");
            }
            let (syl_grp, _) = subgroup_to_group(g, &syl);
            if syl_grp.is_abelian() {
                return fail("nonabelian Sylow 2-subgroup");
            }
        }
        ReferenceName::NonnormalSylowExample => {
            if g.order() != 1296 {
                return fail("order 1296");
            }
            if !is_3_pyramidal_definition(g) {
                return fail("three conjugate involutions");
            }
            let syl = sylow_subgroup(g, 2);
            if is_normal(g, &syl) {
                return fail("non-normal Sylow 2-subgroup");
            }
        }
    }
    Ok(())
}

/// Cached, validated copy of the order-64 Suzuki group; the classifier
/// consults it whenever a reduced quotient has a nonabelian Sylow
/// 2-subgroup.
pub fn suzuki64_reference() -> Result<&'static Group> {
    static SUZUKI64: OnceLock<Group> = OnceLock::new();
    if let Some(g) = SUZUKI64.get() {
        return Ok(g);
    }
    let g = load_reference(ReferenceName::Suzuki64)?;
    Ok(SUZUKI64.get_or_init(|| g))
}

/// Which groups a corpus run covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// ~60 groups of order <= 200.
    Small,
    /// Adds orders up to 1296, including the Suzuki-quotient groups and the
    /// non-normal-Sylow example.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Positive,
    Negative,
    Unknown,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: String,
    pub spec: GroupSpec,
    pub expected: Expectation,
}

fn cyc(k: usize) -> GroupSpec {
    GroupSpec::Cyclic { k }
}

fn dprod(specs: Vec<GroupSpec>) -> GroupSpec {
    GroupSpec::DirectProd { specs }
}

fn perm_spec(degree: usize, generators: Vec<Vec<usize>>) -> GroupSpec {
    GroupSpec::Perm { degree, generators }
}

fn s3_spec() -> GroupSpec {
    perm_spec(3, vec![vec![1, 0, 2], vec![0, 2, 1]])
}

fn a4_spec() -> GroupSpec {
    perm_spec(4, vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

fn s4_spec() -> GroupSpec {
    perm_spec(4, vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]])
}

fn q8_spec() -> GroupSpec {
    perm_spec(
        8,
        vec![vec![1, 2, 3, 0, 5, 6, 7, 4], vec![4, 7, 6, 5, 2, 1, 0, 3]],
    )
}

/// `SL(2,3)` on the eight nonzero vectors of `GF(3)^2`.
fn sl23_spec() -> GroupSpec {
    perm_spec(
        8,
        vec![vec![3, 7, 2, 6, 1, 5, 0, 4], vec![5, 2, 0, 6, 3, 1, 7, 4]],
    )
}

/// Dihedral group on `k` points: rotation plus a reflection.
fn dihedral_spec(k: usize) -> GroupSpec {
    let rot: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
    let refl: Vec<usize> = (0..k).map(|i| (k - 1) - i).collect();
    perm_spec(k, vec![rot, refl])
}

fn homocyclic(n: u32, y: Option<GroupSpec>) -> GroupSpec {
    GroupSpec::Family(FamilySpec::Homocyclic {
        n,
        y: y.map(Box::new),
    })
}

fn s3xh(h: GroupSpec) -> GroupSpec {
    GroupSpec::Family(FamilySpec::S3TimesH { h: Box::new(h) })
}

fn reference(name: ReferenceName) -> GroupSpec {
    GroupSpec::Reference { name }
}

/// The deterministic differential corpus (`corpus/v1`). Entries are listed
/// in a fixed order; two calls always agree.
pub fn corpus(profile: Profile) -> Vec<CorpusEntry> {
    use Expectation::{Negative, Positive};
    let mut entries: Vec<CorpusEntry> = Vec::new();
    let mut push = |id: &str, spec: GroupSpec, expected: Expectation| {
        entries.push(CorpusEntry {
            id: id.to_string(),
            spec,
            expected,
        });
    };

    // cyclic controls
    for k in [1usize, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15, 16, 27] {
        push(&format!("c{k}"), cyc(k), Negative);
    }
    // abelian products: right involution counts, wrong conjugacy
    push("c2xc2", dprod(vec![cyc(2), cyc(2)]), Negative);
    push("c2xc4", dprod(vec![cyc(2), cyc(4)]), Negative);
    push("c2xc8", dprod(vec![cyc(2), cyc(8)]), Negative);
    push("c4xc4", dprod(vec![cyc(4), cyc(4)]), Negative);
    push("c2xc2xc2", dprod(vec![cyc(2), cyc(2), cyc(2)]), Negative);
    push("c8xc8", dprod(vec![cyc(8), cyc(8)]), Negative);
    push("c3xc3", dprod(vec![cyc(3), cyc(3)]), Negative);
    push("c2xc2xc9", dprod(vec![cyc(2), cyc(2), cyc(9)]), Negative);
    // dihedral
    push("d3", dihedral_spec(3), Positive);
    for k in [4usize, 5, 6, 7, 8, 9, 10, 12] {
        push(&format!("d{k}"), dihedral_spec(k), Negative);
    }
    // quaternion and SL(2,3)
    push("q8", q8_spec(), Negative);
    push("sl23", sl23_spec(), Negative);
    // symmetric / alternating
    push("s3", s3_spec(), Positive);
    push("a4", a4_spec(), Positive);
    push("s4", s4_spec(), Negative);
    // even-factor products: involution counts break
    push("s3xc2", dprod(vec![s3_spec(), cyc(2)]), Negative);
    push("a4xc2", dprod(vec![a4_spec(), cyc(2)]), Negative);
    push("d4xc3", dprod(vec![dihedral_spec(4), cyc(3)]), Negative);
    push("q8xc3", dprod(vec![q8_spec(), cyc(3)]), Negative);
    push("s3xs3", dprod(vec![s3_spec(), s3_spec()]), Negative);
    push("q8xa4", dprod(vec![q8_spec(), a4_spec()]), Negative);
    push("c4xc4xc3", dprod(vec![cyc(4), cyc(4), cyc(3)]), Negative);
    // odd-factor products: closure under x odd
    push("s3xc5", dprod(vec![s3_spec(), cyc(5)]), Positive);
    push("s3xc7", dprod(vec![s3_spec(), cyc(7)]), Positive);
    push("s3xc9", dprod(vec![s3_spec(), cyc(9)]), Positive);
    push("s3xc11", dprod(vec![s3_spec(), cyc(11)]), Positive);
    push("s3xc15", dprod(vec![s3_spec(), cyc(15)]), Positive);
    push("s3xc3xc9", dprod(vec![s3_spec(), cyc(3), cyc(9)]), Positive);
    push("a4xc3", dprod(vec![a4_spec(), cyc(3)]), Positive);
    push("a4xc5", dprod(vec![a4_spec(), cyc(5)]), Positive);
    push("a4xc7", dprod(vec![a4_spec(), cyc(7)]), Positive);
    push("a4xc9", dprod(vec![a4_spec(), cyc(9)]), Positive);
    push("a4xc13", dprod(vec![a4_spec(), cyc(13)]), Positive);
    push("a4xc15", dprod(vec![a4_spec(), cyc(15)]), Positive);
    // family constructors at small parameters
    push("fam-s3xh-c5", s3xh(cyc(5)), Positive);
    push("fam-homocyclic-n1", homocyclic(1, None), Positive);
    push("fam-homocyclic-n2", homocyclic(2, None), Positive);
    push(
        "fam-homocyclic-n1-y9",
        homocyclic(1, Some(cyc(9))),
        Positive,
    );
    push(
        "fam-homocyclic-n2-y9",
        homocyclic(2, Some(cyc(9))),
        Positive,
    );
    push(
        "fam-homocyclic-n1-y15",
        homocyclic(1, Some(cyc(15))),
        Positive,
    );
    push(
        "fam-homocyclic-n1-y3x3",
        homocyclic(1, Some(dprod(vec![cyc(3), cyc(3)]))),
        Positive,
    );
    push(
        "sd-klein-gamma",
        GroupSpec::SemidirectProd {
            n: Box::new(dprod(vec![cyc(2), cyc(2)])),
            a: Box::new(cyc(3)),
            action: ActionId::Gamma,
        },
        Positive,
    );
    push(
        "sd-c4c4-gamma",
        GroupSpec::SemidirectProd {
            n: Box::new(dprod(vec![cyc(4), cyc(4)])),
            a: Box::new(cyc(3)),
            action: ActionId::Gamma,
        },
        Positive,
    );

    if profile == Profile::Full {
        // reference groups
        push("ref-suzuki64", reference(ReferenceName::Suzuki64), Negative);
        push(
            "ref-suzuki64-c3",
            reference(ReferenceName::Suzuki64SemidirectC3),
            Positive,
        );
        push(
            "ref-suzuki64-c15",
            reference(ReferenceName::Suzuki64SemidirectC15),
            Positive,
        );
        push(
            "ref-nonnormal-sylow",
            reference(ReferenceName::NonnormalSylowExample),
            Positive,
        );
        push(
            "fam-suzuki64-a3",
            GroupSpec::Family(FamilySpec::Suzuki64 { a_order: 3 }),
            Positive,
        );
        push(
            "fam-suzuki64-a15",
            GroupSpec::Family(FamilySpec::Suzuki64 { a_order: 15 }),
            Positive,
        );
        // larger homocyclic members
        push("fam-homocyclic-n3", homocyclic(3, None), Positive);
        push("fam-homocyclic-n4", homocyclic(4, None), Positive);
        push(
            "fam-homocyclic-n2-y21",
            homocyclic(2, Some(cyc(21))),
            Positive,
        );
        push(
            "fam-homocyclic-n2-y27",
            homocyclic(2, Some(cyc(27))),
            Positive,
        );
        push(
            "fam-homocyclic-n3-y9",
            homocyclic(3, Some(cyc(9))),
            Positive,
        );
        push(
            "fam-homocyclic-n2-y3x9",
            homocyclic(2, Some(dprod(vec![cyc(3), cyc(9)]))),
            Positive,
        );
        push(
            "fam-homocyclic-n1-y3x3x3",
            homocyclic(1, Some(dprod(vec![cyc(3), cyc(3), cyc(3)]))),
            Positive,
        );
        // closure under odd direct factors, larger orders
        push(
            "fam-homocyclic-n2-xc5",
            dprod(vec![homocyclic(2, None), cyc(5)]),
            Positive,
        );
        push(
            "fam-homocyclic-n3-xc3",
            dprod(vec![homocyclic(3, None), cyc(3)]),
            Positive,
        );
        push(
            "suzuki-c3-xc5",
            dprod(vec![
                GroupSpec::Family(FamilySpec::Suzuki64 { a_order: 3 }),
                cyc(5),
            ]),
            Positive,
        );
        push("a4xc25", dprod(vec![a4_spec(), cyc(25)]), Positive);
        push("a4xc27", dprod(vec![a4_spec(), cyc(27)]), Positive);
        push("a4xc35", dprod(vec![a4_spec(), cyc(35)]), Positive);
        push("a4xc49", dprod(vec![a4_spec(), cyc(49)]), Positive);
        push("s3xc49", dprod(vec![s3_spec(), cyc(49)]), Positive);
        push("s3xc81", dprod(vec![s3_spec(), cyc(81)]), Positive);
        push("s3xc121", dprod(vec![s3_spec(), cyc(121)]), Positive);
        // larger negatives
        push("c16xc16", dprod(vec![cyc(16), cyc(16)]), Negative);
        push("c32xc32", dprod(vec![cyc(32), cyc(32)]), Negative);
        push("d16", dihedral_spec(16), Negative);
        push("d24", dihedral_spec(24), Negative);
        push("s4xc3", dprod(vec![s4_spec(), cyc(3)]), Negative);
        push("s4xs3", dprod(vec![s4_spec(), s3_spec()]), Negative);
        push("q8xc15", dprod(vec![q8_spec(), cyc(15)]), Negative);
        push("q8xq8", dprod(vec![q8_spec(), q8_spec()]), Negative);
        push("a4xa4", dprod(vec![a4_spec(), a4_spec()]), Negative);
        push("d4xc9", dprod(vec![dihedral_spec(4), cyc(9)]), Negative);
        push("d4xc27", dprod(vec![dihedral_spec(4), cyc(27)]), Negative);
        push(
            "suzuki64xc3",
            dprod(vec![reference(ReferenceName::Suzuki64), cyc(3)]),
            Negative,
        );
    }

    entries
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pyramidal::{classify, Verdict};

    #[test]
    fn s3_times_h_variants() {
        let g = make_s3_times_h(&cyc(1), DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 6);
        let g = make_s3_times_h(&cyc(5), DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 30);
        assert!(is_3_pyramidal_definition(&g));
        let g = make_s3_times_h(&dprod(vec![cyc(3), cyc(9)]), DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 162);
        assert!(is_3_pyramidal_definition(&g));
    }

    #[test]
    fn s3_times_h_rejects_even_h() {
        assert!(matches!(
            make_s3_times_h(&cyc(2), DEFAULT_CAP),
            Err(Error::EvenOrderH { order: 2 })
        ));
    }

    #[test]
    fn homocyclic_family_defaults() {
        let g = make_homocyclic_family(1, None, None, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 12);
        assert!(is_3_pyramidal_definition(&g));
        let g = make_homocyclic_family(2, None, None, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 48);
        assert!(is_3_pyramidal_definition(&g));
    }

    #[test]
    fn homocyclic_family_with_c9_has_odd_core_c3() {
        let g = make_homocyclic_family(2, Some(&cyc(9)), None, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 144);
        assert!(is_3_pyramidal_definition(&g));
        assert_eq!(odd_core(&g).order(), 3);
    }

    #[test]
    fn homocyclic_family_accepts_explicit_witness() {
        // C9 on indices 0..9: the cube subgroup {0, 3, 6} has index 3
        let g = make_homocyclic_family(1, Some(&cyc(9)), Some(&[3]), DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 36);
        assert!(is_3_pyramidal_definition(&g));
    }

    #[test]
    fn homocyclic_family_rejects_bad_witness() {
        assert!(matches!(
            make_homocyclic_family(1, Some(&cyc(9)), Some(&[1]), DEFAULT_CAP),
            Err(Error::NoIndex3NormalSubgroup { .. })
        ));
    }

    #[test]
    fn homocyclic_family_rejects_even_or_indexless_y() {
        assert!(matches!(
            make_homocyclic_family(1, Some(&cyc(4)), None, DEFAULT_CAP),
            Err(Error::EvenOrderY { order: 4 })
        ));
        assert!(matches!(
            make_homocyclic_family(1, Some(&cyc(5)), None, DEFAULT_CAP),
            Err(Error::NoIndex3NormalSubgroup { order: 5 })
        ));
    }

    #[test]
    fn suzuki_family_orders_and_verdicts() {
        let g = make_suzuki64_family(3).unwrap();
        assert_eq!(g.order(), 192);
        assert!(is_3_pyramidal_definition(&g));
        assert_eq!(
            classify(&g).unwrap().verdict,
            Verdict::Suzuki64Semidirect { a_order: 3 }
        );
        assert!(matches!(
            make_suzuki64_family(5),
            Err(Error::InvalidAOrder { got: 5 })
        ));
    }

    #[test]
    fn reference_groups_load_and_validate() {
        let n = load_reference(ReferenceName::Suzuki64).unwrap();
        assert_eq!(n.order(), 64);
        assert_eq!(center(&n).order(), 4);
        assert!(!is_3_pyramidal_definition(&n)); // central involutions are not conjugate
        let e = load_reference(ReferenceName::NonnormalSylowExample).unwrap();
        assert_eq!(e.order(), 1296);
    }

    #[test]
    fn corrupted_reference_data_cannot_load() {
        // drop one generator: the closure is a proper subgroup
        let file = PermGroupFile::from_json(ReferenceName::Suzuki64.data()).unwrap();
        let crippled = PermGroupFile {
            degree: file.degree,
            generators: file.generators[..2].to_vec(),
        };
        let err =
            load_reference_from_str(ReferenceName::Suzuki64, &crippled.to_json()).unwrap_err();
        assert!(matches!(err, Error::ValidationFailed { .. }));
        let err = load_reference_from_str(ReferenceName::Suzuki64, "{broken").unwrap_err();
        assert!(matches!(err, Error::ReferenceDataMissing { .. }));
    }

    #[test]
    fn spec_resolution_is_deterministic() {
        let spec = homocyclic(2, Some(cyc(9)));
        let a = resolve(&spec, DEFAULT_CAP).unwrap();
        let b = resolve(&spec, DEFAULT_CAP).unwrap();
        assert_eq!(a.order(), b.order());
        for x in a.elements() {
            for y in a.elements() {
                assert_eq!(a.mul(x, y), b.mul(x, y));
            }
        }
    }

    #[test]
    fn spec_json_round_trip() {
        let specs = vec![
            s3_spec(),
            cyc(9),
            dprod(vec![cyc(4), cyc(4)]),
            GroupSpec::SemidirectProd {
                n: Box::new(dprod(vec![cyc(4), cyc(4)])),
                a: Box::new(cyc(3)),
                action: ActionId::Gamma,
            },
            homocyclic(2, Some(cyc(9))),
            s3xh(cyc(7)),
            GroupSpec::Family(FamilySpec::Suzuki64 { a_order: 15 }),
            reference(ReferenceName::NonnormalSylowExample),
        ];
        for spec in specs {
            let text = serde_json::to_string(&spec).unwrap();
            let back: GroupSpec = serde_json::from_str(&text).unwrap();
            assert_eq!(back, spec);
        }
    }

    #[test]
    fn corpus_is_deterministic_and_well_formed() {
        let a = corpus(Profile::Full);
        let b = corpus(Profile::Full);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.id, y.id);
            assert_eq!(x.spec, y.spec);
        }
        let small = corpus(Profile::Small);
        assert!(small.len() >= 55, "small corpus has {}", small.len());
        assert!(a.len() >= 90, "full corpus has {}", a.len());
        // ids unique
        let mut ids: Vec<&str> = a.iter().map(|e| e.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), a.len());
    }
}
