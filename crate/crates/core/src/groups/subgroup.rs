use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use super::{FiniteGroup, GroupKind, Quat};
use crate::error::{Error, Result};

/// A subgroup of a parent group together with a standalone copy of it.
///
/// The standalone group carries its own classes and character table; `embedding[i]` is the
/// parent index of standalone element `i`.
#[derive(Clone, Debug)]
pub struct SubgroupHandle {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
    generator: Option<usize>,
    name: String,
    group: Arc<FiniteGroup>,
    embedding: Vec<usize>,
    position: HashMap<usize, usize>,
}

impl SubgroupHandle {
    fn from_standalone(
        parent: &Arc<FiniteGroup>,
        name: String,
        generator: Option<usize>,
        group: Arc<FiniteGroup>,
    ) -> Result<Self> {
        let embedding = group
            .elements()
            .iter()
            .map(|q| {
                parent
                    .index_of(q)
                    .ok_or_else(|| Error::InvalidSubgroup(format!("{name}: element outside parent")))
            })
            .collect::<Result<Vec<_>>>()?;
        let position = embedding.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut members = embedding.clone();
        members.sort_unstable();
        Ok(SubgroupHandle {
            parent: parent.clone(),
            members,
            generator,
            name,
            group,
            embedding,
            position,
        })
    }

    /// The cyclic subgroup generated by a named generator (`R`, `S`, `T` or `RST`).
    pub fn cyclic(parent: &Arc<FiniteGroup>, gen: &str) -> Result<Self> {
        let idx = parent.generator(gen)?;
        let label = if gen.eq_ignore_ascii_case("rst") {
            "RST".to_string()
        } else {
            gen.to_ascii_uppercase()
        };
        Self::cyclic_of(parent, idx, &label)
    }

    /// The cyclic subgroup generated by an arbitrary element.
    pub fn cyclic_of(parent: &Arc<FiniteGroup>, element: usize, gen_name: &str) -> Result<Self> {
        let q = parent.element_order(element) as u32;
        let standalone = FiniteGroup::from_generators(
            &format!("<{gen_name}>"),
            GroupKind::Cyclic { q },
            vec![(gen_name.to_string(), parent.element(element).clone())],
        )?;
        Self::from_standalone(
            parent,
            format!("<{gen_name}>"),
            Some(element),
            Arc::new(standalone),
        )
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Result<Self> {
        Self::cyclic_of(parent, parent.identity(), "E")
    }

    /// The parent itself, viewed as a subgroup.
    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        let n = parent.order();
        SubgroupHandle {
            parent: parent.clone(),
            members: (0..n).collect(),
            generator: None,
            name: parent.name().to_string(),
            group: parent.clone(),
            embedding: (0..n).collect(),
            position: (0..n).map(|i| (i, i)).collect(),
        }
    }

    /// A subgroup given by member indices; fails unless the set is closed.
    pub fn from_members(parent: &Arc<FiniteGroup>, members: &[usize], name: &str) -> Result<Self> {
        let set: HashSet<usize> = members.iter().copied().collect();
        if !set.contains(&parent.identity()) {
            return Err(Error::InvalidSubgroup(format!("{name}: identity missing")));
        }
        for &a in &set {
            if !set.contains(&parent.inverse(a)) {
                return Err(Error::InvalidSubgroup(format!("{name}: not closed under inverse")));
            }
            for &b in &set {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(Error::InvalidSubgroup(format!("{name}: not closed under products")));
                }
            }
        }
        let gens = members
            .iter()
            .map(|&m| (format!("g{m}"), parent.element(m).clone()))
            .collect();
        let standalone = FiniteGroup::from_generators(name, GroupKind::Generic, gens)?;
        Self::from_standalone(parent, name.to_string(), None, Arc::new(standalone))
    }

    /// Embeds an already built group whose elements all lie in the parent.
    pub fn from_embedded(parent: &Arc<FiniteGroup>, group: Arc<FiniteGroup>) -> Result<Self> {
        let name = group.name().to_string();
        Self::from_standalone(parent, name, None, group)
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    /// Standalone copy of the subgroup.
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    /// Sorted parent indices of the members.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generator(&self) -> Option<usize> {
        self.generator
    }

    /// Parent index of a standalone element.
    pub fn embed(&self, sub_index: usize) -> usize {
        self.embedding[sub_index]
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    /// Standalone index of a parent element, if it lies in the subgroup.
    pub fn locate(&self, parent_index: usize) -> Option<usize> {
        self.position.get(&parent_index).copied()
    }

    pub fn contains(&self, parent_index: usize) -> bool {
        self.position.contains_key(&parent_index)
    }

    /// The conjugate subgroup `u⁻¹ H u`, as a cyclic subgroup when `H` is cyclic.
    pub fn conjugated_by(&self, u: usize) -> Result<Self> {
        match self.generator {
            Some(g) => {
                let c = self.parent.conjugate(g, u);
                Self::cyclic_of(&self.parent, c, &format!("{}^u", self.name.trim_matches(['<', '>'])))
            }
            None => {
                let members: Vec<usize> =
                    self.members.iter().map(|&m| self.parent.conjugate(m, u)).collect();
                Self::from_members(&self.parent, &members, &format!("{}^u", self.name))
            }
        }
    }
}

/// Left coset decomposition `G = ∪ g_i H` with a fixed set of representatives.
#[derive(Clone, Debug)]
pub struct CosetDecomposition {
    /// Representatives `g_i`; the smallest element index in each coset, ascending.
    pub representatives: Vec<usize>,
    /// For every element `g`, the pair `(i, h)` with `g = g_i · h` (`h` a parent index).
    pub coset_of: Vec<(usize, usize)>,
}

impl CosetDecomposition {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// `g = g_i h`, returned as `(i, h)`.
    pub fn factor(&self, g: usize) -> (usize, usize) {
        self.coset_of[g]
    }
}

pub fn left_cosets(h: &SubgroupHandle) -> CosetDecomposition {
    let g = h.parent();
    let mut coset_of = vec![(usize::MAX, usize::MAX); g.order()];
    let mut representatives = Vec::new();
    for x in 0..g.order() {
        if coset_of[x].0 != usize::MAX {
            continue;
        }
        let i = representatives.len();
        representatives.push(x);
        for &m in h.members() {
            coset_of[g.mul(x, m)] = (i, m);
        }
    }
    CosetDecomposition {
        representatives,
        coset_of,
    }
}

fn closure(g: &FiniteGroup, seeds: Vec<usize>) -> Vec<usize> {
    let mut set = HashSet::new();
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(a) = queue.pop_front() {
        if set.insert(a) {
            queue.extend(seeds.iter().map(|&b| g.mul(a, b)));
        }
    }
    let mut v: Vec<usize> = set.into_iter().collect();
    v.sort_unstable();
    v
}

/// The unique index-2 subgroup, when one exists.
///
/// Index-2 subgroups contain every square and every commutator; the subgroup `G²[G,G]`
/// they generate has index 2 exactly when the index-2 subgroup is unique. For a subgroup of
/// order 24 the result is presented as `⟨2,3,3⟩`, with the parent's `S` (if present)
/// taking the role of `T`.
pub fn find_index2_subgroup(parent: &Arc<FiniteGroup>) -> Result<SubgroupHandle> {
    let n = parent.order();
    let mut seeds = HashSet::new();
    for a in 0..n {
        seeds.insert(parent.mul(a, a));
        for b in 0..n {
            let comm = parent.mul(
                parent.mul(parent.inverse(a), parent.inverse(b)),
                parent.mul(a, b),
            );
            seeds.insert(comm);
        }
    }
    let mut seeds: Vec<usize> = seeds.into_iter().collect();
    seeds.sort_unstable();
    let sub = closure(parent, seeds);
    match n / sub.len() {
        1 => Err(Error::NotFound(format!(
            "{} has no index-2 subgroup",
            parent.name()
        ))),
        2 => {
            if sub.len() == 24 {
                if let Some(h) = present_as_tetrahedral(parent, &sub)? {
                    return Ok(h);
                }
            }
            SubgroupHandle::from_members(parent, &sub, &format!("{}'", parent.name()))
        }
        k => Err(Error::NotFound(format!(
            "{} has several index-2 subgroups (abelianised quotient of 2-rank {k})",
            parent.name()
        ))),
    }
}

fn present_as_tetrahedral(parent: &Arc<FiniteGroup>, sub: &[usize]) -> Result<Option<SubgroupHandle>> {
    let Some(minus_e) = parent.neg_identity() else {
        return Ok(None);
    };
    let mut t_choices: Vec<usize> = Vec::new();
    if let Ok(s) = parent.generator("S") {
        if sub.binary_search(&s).is_ok() {
            t_choices.push(s);
        }
    }
    t_choices.extend(sub.iter().filter(|&&a| parent.element_order(a) == 6));
    for &t in &t_choices {
        for &s in sub.iter().filter(|&&a| parent.element_order(a) == 6) {
            // R S T = -E  ⇒  R = -E (S T)⁻¹
            let r = parent.mul(minus_e, parent.inverse(parent.mul(s, t)));
            if parent.element_order(r) != 4 {
                continue;
            }
            let triple: [Quat; 3] = [r, s, t].map(|i| parent.element(i).clone());
            if let Ok(g) = FiniteGroup::from_triple(&format!("{}'", parent.name()), 3, triple) {
                return SubgroupHandle::from_embedded(parent, g).map(Some);
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GeneratorChoice;

    fn group(n: u32) -> Arc<FiniteGroup> {
        FiniteGroup::binary_polyhedral(n, GeneratorChoice::Standard).unwrap()
    }

    #[test]
    fn cyclic_orders() {
        let i = group(5);
        assert_eq!(SubgroupHandle::cyclic(&i, "T").unwrap().order(), 10);
        let t = group(3);
        assert_eq!(SubgroupHandle::cyclic(&t, "S").unwrap().order(), 6);
        for n in 3..=5 {
            let g = group(n);
            let z2 = SubgroupHandle::cyclic(&g, "RST").unwrap();
            assert_eq!(z2.order(), 2);
            assert_eq!(z2.members(), {
                let mut v = vec![g.identity(), g.neg_identity().unwrap()];
                v.sort();
                v
            });
        }
    }

    #[test]
    fn standalone_cyclic_is_powers() {
        let g = group(4);
        let h = SubgroupHandle::cyclic(&g, "T").unwrap();
        let t = g.generator("T").unwrap();
        for k in 0..8 {
            assert_eq!(h.embed(k), g.power(t, k));
        }
    }

    #[test]
    fn coset_examples() {
        let g = group(3);
        assert_eq!(left_cosets(&SubgroupHandle::whole(&g)).len(), 1);
        assert_eq!(left_cosets(&SubgroupHandle::trivial(&g).unwrap()).len(), 24);
        let h = SubgroupHandle::cyclic(&g, "T").unwrap();
        let cosets = left_cosets(&h);
        assert_eq!(cosets.len(), 4);
        for x in 0..g.order() {
            let (i, m) = cosets.factor(x);
            assert!(h.contains(m));
            assert_eq!(g.mul(cosets.representatives[i], m), x);
        }
    }

    #[test]
    fn invalid_subgroup() {
        let g = group(3);
        let t = g.generator("T").unwrap();
        let err = SubgroupHandle::from_members(&g, &[g.identity(), t], "bad");
        assert!(matches!(err, Err(Error::InvalidSubgroup(_))));
    }

    #[test]
    fn index_two_subgroups() {
        let o = group(4);
        let h = find_index2_subgroup(&o).unwrap();
        assert_eq!(h.order(), 24);
        assert_eq!(h.group().num_classes(), 7);
        assert!(matches!(h.group().kind(), GroupKind::BinaryPolyhedral { n: 3, .. }));
        // the parent's S is the subgroup's T
        let s = o.generator("S").unwrap();
        assert_eq!(h.embed(h.group().generator("T").unwrap()), s);
        assert!(matches!(find_index2_subgroup(&group(5)), Err(Error::NotFound(_))));
        assert!(matches!(find_index2_subgroup(&group(3)), Err(Error::NotFound(_))));
    }

    #[test]
    fn conjugate_subgroup() {
        let g = group(4);
        let h = SubgroupHandle::cyclic(&g, "T").unwrap();
        let r = g.generator("R").unwrap();
        let c = h.conjugated_by(r).unwrap();
        assert_eq!(c.order(), h.order());
    }
}
