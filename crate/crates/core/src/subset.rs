//! Subsets of F_{q^m}^* carried as bitsets over element codes.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldTower};

/// Kind of nondegenerate quadric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadricKind {
    Hyperbolic,
    Elliptic,
}

/// How a subset was built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Cyclotomic {
        n: u64,
        j: Vec<u64>,
    },
    Explicit,
    Quadric {
        kind: QuadricKind,
        gram: Vec<Vec<u32>>,
    },
    Complement(Box<Origin>),
}

/// A subset D of F_{q^m}^*.
#[derive(Clone, Debug)]
pub struct SubsetD {
    members: FixedBitSet,
    len: usize,
    origin: Origin,
}

impl SubsetD {
    /// Build from a bitset over codes; bit 0 (the zero element) must be clear.
    pub fn from_bitset(members: FixedBitSet, origin: Origin) -> Result<Self> {
        if members.contains(0) {
            return Err(Error::InvalidSubset("0 must not belong to D".into()));
        }
        let len = members.count_ones(..);
        Ok(SubsetD {
            members,
            len,
            origin,
        })
    }

    pub fn from_elems(tower: &FieldTower, elems: &[Elem], origin: Origin) -> Result<Self> {
        Self::from_bitset(tower.bitset(elems.iter().copied()), origin)
    }

    /// Explicit set given by discrete logarithms of its members.
    pub fn from_logs(tower: &FieldTower, logs: &[u64]) -> Result<Self> {
        let elems: Vec<Elem> = logs.iter().map(|&l| tower.pow_gamma(l)).collect();
        Self::from_elems(tower, &elems, Origin::Explicit)
    }

    pub fn empty(tower: &FieldTower) -> Self {
        SubsetD {
            members: FixedBitSet::with_capacity(tower.size() as usize),
            len: 0,
            origin: Origin::Explicit,
        }
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x.code() as usize)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.ones().map(|c| Elem(c as u32))
    }

    pub fn elems(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    /// D̄ = F_{q^m}^* \ D.
    pub fn complement(&self) -> SubsetD {
        let mut bits = self.members.clone();
        bits.toggle_range(1..);
        let len = bits.count_ones(..);
        let origin = match &self.origin {
            Origin::Complement(inner) => (**inner).clone(),
            o => Origin::Complement(Box::new(o.clone())),
        };
        SubsetD {
            members: bits,
            len,
            origin,
        }
    }

    /// Nonempty and strictly smaller than F_{q^m}^*.
    pub fn is_proper(&self, tower: &FieldTower) -> bool {
        self.len > 0 && (self.len as u64) < tower.order()
    }

    /// −D = D
    pub fn is_symmetric(&self, tower: &FieldTower) -> bool {
        self.iter().all(|x| self.contains(tower.neg(x)))
    }

    /// Discrete logs of the members, ascending.
    pub fn logs(&self, tower: &FieldTower) -> Vec<u32> {
        let mut v: Vec<u32> = self.iter().map(|x| tower.log(x).unwrap()).collect();
        v.sort_unstable();
        v
    }
}

impl PartialEq for SubsetD {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}
