//! Vectorial blocking-set checks with respect to the hyperplanes L(a) of F_{q^m}.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::field::{Elem, FieldTower};
use crate::par::{self, Exec};
use crate::subset::SubsetD;

/// The (q^m−1)/(q−1) hyperplanes through the origin, L(γ^i) for i < (q^m−1)/(q−1),
/// each stored as a bitset of its nonzero elements.
pub struct HyperplaneFamily {
    reps: Vec<u32>,
    members: Vec<FixedBitSet>,
}

impl HyperplaneFamily {
    pub fn new(tower: &FieldTower, exec: Exec) -> Self {
        let r = tower.class_count() as usize;
        let members = par::map_range(exec, r, |i| {
            let a = tower.pow_gamma(i as u64);
            let mut bs = FixedBitSet::with_capacity(tower.size() as usize);
            for x in tower.nonzero_by_log() {
                if tower.trace_sub(tower.mul(a, x)).is_zero() {
                    bs.insert(x.code() as usize);
                }
            }
            bs
        });
        HyperplaneFamily {
            reps: (0..r as u32).collect(),
            members,
        }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Discrete log of the representative of hyperplane `i`.
    pub fn rep_log(&self, i: usize) -> u32 {
        self.reps[i]
    }

    /// Nonzero elements of hyperplane `i`.
    pub fn members(&self, i: usize) -> &FixedBitSet {
        &self.members[i]
    }
}

/// S ∩ L(γ^i) for one hyperplane.
#[derive(Clone, Debug)]
pub struct Intersection {
    pub rep_log: u32,
    pub members: FixedBitSet,
    pub size: usize,
}

pub fn hyperplane_intersections(family: &HyperplaneFamily, s: &SubsetD) -> Vec<Intersection> {
    (0..family.len())
        .map(|i| {
            let mut members = family.members(i).clone();
            members.intersect_with(s.bits());
            let size = members.count_ones(..);
            Intersection {
                rep_log: family.rep_log(i),
                members,
                size,
            }
        })
        .collect()
}

/// All ordered pairs (i, j), i ≠ j, with S ∩ H_i ⊆ S ∩ H_j.
pub fn containments(inter: &[Intersection], exec: Exec) -> Vec<(usize, usize)> {
    par::map_range(exec, inter.len(), |i| {
        (0..inter.len())
            .filter(|&j| j != i && inter[i].members.is_subset(&inter[j].members))
            .map(|j| (i, j))
            .collect::<Vec<_>>()
    })
    .concat()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub h1_log: u32,
    pub h2_log: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockingVerdict {
    /// S meets every hyperplane.
    pub blocking: bool,
    /// Some hyperplane minus the origin lies inside S.
    pub contains_subspace: bool,
    /// No intersection S ∩ H lies inside another hyperplane.
    pub cutting: bool,
    /// All three: a cutting vectorial (1, m−1)-blocking set.
    pub cutting_blocking_set: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub missed_hyperplane_log: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contained_hyperplane_log: Option<u32>,
    /// First pair with S ∩ H1 ⊆ S ∩ H2.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<PairWitness>,
}

pub fn is_cutting_vectorial_blocking(
    tower: &FieldTower,
    s: &SubsetD,
    exec: Exec,
) -> BlockingVerdict {
    let family = HyperplaneFamily::new(tower, exec);
    let inter = hyperplane_intersections(&family, s);
    let missed = inter.iter().find(|h| h.size == 0).map(|h| h.rep_log);
    let contained = (0..family.len())
        .find(|&i| family.members(i).is_subset(s.bits()))
        .map(|i| family.rep_log(i));
    let first = par::find_first(exec, inter.len(), |i| {
        (0..inter.len()).any(|j| j != i && inter[i].members.is_subset(&inter[j].members))
    });
    let witness = first.map(|i| {
        let j = (0..inter.len())
            .find(|&j| j != i && inter[i].members.is_subset(&inter[j].members))
            .unwrap();
        PairWitness {
            h1_log: inter[i].rep_log,
            h2_log: inter[j].rep_log,
        }
    });
    let blocking = missed.is_none();
    let contains_subspace = contained.is_some();
    let cutting = witness.is_none();
    BlockingVerdict {
        blocking,
        contains_subspace,
        cutting,
        cutting_blocking_set: blocking && !contains_subspace && cutting,
        missed_hyperplane_log: missed,
        contained_hyperplane_log: contained,
        witness,
    }
}

/// Reading used for the second hypothesis of the cutting-blocking-set route:
/// for every v ≠ 0 some x has f_D(x) ≠ 0 and f_D(x) + Tr(vx) = 0.
pub const CONDITION2_READING: &str =
    "for every nonzero v there is x with f(x) + v·x = 0 and f(x) != 0 (interpretation)";

pub fn cutting_condition2(tower: &FieldTower, d: &SubsetD, exec: Exec) -> bool {
    let f = tower.fq();
    let minus_one = f.elem(f.neg(1));
    let members = d.elems();
    par::find_first(exec, tower.order() as usize, |i| {
        let v = tower.pow_gamma(i as u64);
        !members
            .iter()
            .any(|&x| tower.trace_sub(tower.mul(v, x)) == minus_one)
    })
    .is_none()
}

/// Sizes of S ∩ H for each hyperplane, in representative order.
pub fn intersection_sizes(tower: &FieldTower, s: &SubsetD) -> Vec<usize> {
    let family = HyperplaneFamily::new(tower, Exec::default());
    hyperplane_intersections(&family, s)
        .into_iter()
        .map(|h| h.size)
        .collect()
}

/// Elements of S ∩ L(γ^i).
pub fn intersection_elems(tower: &FieldTower, s: &SubsetD, rep_log: u32) -> Vec<Elem> {
    let a = tower.pow_gamma(rep_log as u64);
    s.iter()
        .filter(|&x| tower.trace_sub(tower.mul(a, x)).is_zero())
        .collect()
}
