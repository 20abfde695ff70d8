use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use super::Permutation;
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: usize = 50_000;

/// A fully enumerated finite permutation group.
///
/// Elements are stored in breadth-first discovery order starting from the
/// identity, so ordinal 0 is always the identity.
#[derive(Debug)]
pub struct GroupContext {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
}

impl GroupContext {
    /// Breadth-first closure of `{e}` under right multiplication by `gens`.
    pub fn enumerate(degree: usize, gens: &[Permutation], cap: usize) -> Result<Arc<Self>> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0u32)]);
        let mut head = 0;
        while head < elements.len() {
            for g in gens {
                let y = elements[head].then(g);
                if index.contains_key(&y) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::EnumerationCap {
                        cap,
                        partial: elements.len(),
                    });
                }
                index.insert(y.clone(), elements.len() as u32);
                elements.push(y);
            }
            head += 1;
        }
        Ok(Arc::new(Self {
            degree,
            generators: gens.to_vec(),
            elements,
            index,
        }))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, ordinal: usize) -> &Permutation {
        &self.elements[ordinal]
    }

    pub fn ordinal(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index.contains_key(g)
    }

    pub(crate) fn require(&self, g: &Permutation) -> Result<usize> {
        self.ordinal(g)
            .ok_or_else(|| Error::NotInGroup(g.to_cycle_string()))
    }

    /// Ordinal of `elements[a] · elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let prod = self.elements[a].then(&self.elements[b]);
        self.index[&prod] as usize
    }
}

/// A subgroup of an enumerated [`GroupContext`], held as a membership mask
/// over the parent's element ordinals.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Arc<GroupContext>,
    generators: Vec<usize>,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.mask == other.mask
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn trivial(parent: &Arc<GroupContext>) -> Self {
        Self::closure(parent, Vec::new())
    }

    pub fn whole(parent: &Arc<GroupContext>) -> Self {
        let mask = vec![true; parent.order()];
        Self {
            parent: Arc::clone(parent),
            generators: parent
                .generators()
                .iter()
                .filter_map(|g| parent.ordinal(g))
                .collect(),
            members: (0..parent.order()).collect(),
            mask,
        }
    }

    /// `⟨gens⟩` inside `parent`.
    pub fn generated(parent: &Arc<GroupContext>, gens: &[Permutation]) -> Result<Self> {
        let ords = gens
            .iter()
            .map(|g| parent.require(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::closure(parent, ords))
    }

    /// Smallest subgroup containing `self` and `extra`.
    pub fn join(&self, extra: &[Permutation]) -> Result<Self> {
        let mut gens = self.generators.clone();
        for g in extra {
            gens.push(self.parent.require(g)?);
        }
        Ok(Self::closure(&self.parent, gens))
    }

    /// Smallest subgroup containing both `self` and `other`.
    pub fn join_subgroup(&self, other: &Subgroup) -> Self {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(&other.generators);
        Self::closure(&self.parent, gens)
    }

    fn closure(parent: &Arc<GroupContext>, mut generators: Vec<usize>) -> Self {
        generators.retain(|&g| g != 0);
        generators.dedup();
        let mut mask = vec![false; parent.order()];
        mask[0] = true;
        let mut members = vec![0usize];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            for &g in &generators {
                let y = parent.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
            head += 1;
        }
        Self {
            parent: Arc::clone(parent),
            generators,
            members,
            mask,
        }
    }

    pub fn parent(&self) -> &Arc<GroupContext> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    /// Member ordinals in discovery order.
    pub fn member_ordinals(&self) -> &[usize] {
        &self.members
    }

    pub fn elements(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.members.iter().map(|&i| self.parent.element(i))
    }

    pub fn generator_elements(&self) -> Vec<Permutation> {
        self.generators
            .iter()
            .map(|&i| self.parent.element(i).clone())
            .collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.parent.ordinal(g).is_some_and(|i| self.mask[i])
    }

    pub fn contains_ordinal(&self, ordinal: usize) -> bool {
        self.mask[ordinal]
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&i| other.mask[i])
    }

    /// Lexicographically minimal element of the left coset `gH`.
    pub fn canonical_coset_rep(&self, g: &Permutation) -> Permutation {
        self.elements()
            .map(|h| g.then(h))
            .min()
            .expect("subgroup contains the identity")
    }

    /// Partition of the parent group into left cosets of `self`.
    pub fn left_cosets(&self) -> CosetTable {
        let parent = &self.parent;
        let mut coset_of = vec![u32::MAX; parent.order()];
        let mut reps: Vec<(Permutation, Vec<usize>)> = Vec::new();
        for g in 0..parent.order() {
            if coset_of[g] != u32::MAX {
                continue;
            }
            let block: Vec<usize> = self.members.iter().map(|&h| parent.mul(g, h)).collect();
            let rep = block
                .iter()
                .map(|&x| parent.element(x))
                .min()
                .expect("nonempty coset")
                .clone();
            for &x in &block {
                coset_of[x] = 0;
            }
            reps.push((rep, block));
        }
        reps.sort_by(|a, b| a.0.cmp(&b.0));
        for (v, (_, block)) in reps.iter().enumerate() {
            for &x in block {
                coset_of[x] = v as u32;
            }
        }
        CosetTable {
            reps: reps.into_iter().map(|(r, _)| r).collect(),
            coset_of,
        }
    }

    /// Canonical representatives of `G/H`, sorted lexicographically.
    pub fn left_coset_reps(&self) -> Vec<Permutation> {
        self.left_cosets().reps
    }

    /// The double coset `HsH = {h₁ s h₂}`.
    pub fn double_coset(&self, s: &Permutation) -> BTreeSet<Permutation> {
        let hs: Vec<Permutation> = self.elements().map(|h| h.then(s)).collect();
        hs.iter()
            .flat_map(|x| self.elements().map(move |h| x.then(h)))
            .collect()
    }

    /// Number of left cosets of `H` inside `HsH`, i.e. the out-degree
    /// contribution `d_s`. Counted directly and checked against
    /// `|H| / |H ∩ sHs⁻¹|`.
    pub fn double_coset_index(&self, s: &Permutation) -> Result<usize> {
        let counted = self
            .elements()
            .map(|h| self.canonical_coset_rep(&h.then(s)))
            .collect::<BTreeSet<_>>()
            .len();
        let by_formula = self.order() / self.conjugate_intersection_order(s);
        if counted != by_formula {
            return Err(Error::Inconsistent(format!(
                "|HsH/H| = {counted} but |H|/|H ∩ sHs^-1| = {by_formula} for s = {s}"
            )));
        }
        Ok(counted)
    }

    /// `|H ∩ sHs⁻¹|`.
    pub fn conjugate_intersection_order(&self, s: &Permutation) -> usize {
        self.elements()
            .filter(|h| self.contains(&h.conjugated_by(&s.inverse())))
            .count()
    }

    /// True iff `gHg⁻¹ = H`.
    pub fn is_normalized_by(&self, g: &Permutation) -> bool {
        self.elements().all(|h| self.contains(&h.conjugated_by(g)))
    }

    /// Enumerates `K g K` for `K = self` by closing `{k·g : k ∈ K}` under right
    /// multiplication by the generators of `K`.
    pub fn double_coset_ordinals(&self, g: &Permutation) -> Result<Vec<bool>> {
        let parent = &self.parent;
        let g = parent.require(g)?;
        let mut mask = vec![false; parent.order()];
        let mut queue = VecDeque::new();
        for &k in &self.members {
            let x = parent.mul(k, g);
            if !mask[x] {
                mask[x] = true;
                queue.push_back(x);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &k in &self.generators {
                let y = parent.mul(x, k);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Ok(mask)
    }
}

/// Left cosets of a subgroup: sorted canonical representatives and the
/// coset index of every parent element.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub reps: Vec<Permutation>,
    pub coset_of: Vec<u32>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn coset_of(&self, ordinal: usize) -> usize {
        self.coset_of[ordinal] as usize
    }
}

/// Free-function form of [`Subgroup::canonical_coset_rep`].
pub fn canonical_coset_rep(g: &Permutation, h: &Subgroup) -> Permutation {
    h.canonical_coset_rep(g)
}

/// True iff `g` normalizes `h`.
pub fn normalizes(g: &Permutation, h: &Subgroup) -> bool {
    h.is_normalized_by(g)
}
