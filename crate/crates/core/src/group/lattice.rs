use std::collections::BTreeSet;
use std::fmt;

use super::abelian::{FiniteAbelianGroup, GroupElement};
use crate::{Error, Result};

/// A subgroup of a finite abelian group.
///
/// `elements` holds element indices in increasing (lexicographic) order.
#[derive(Clone, Debug)]
pub struct Lattice {
    parent: FiniteAbelianGroup,
    elements: Vec<usize>,
    member: Vec<bool>,
    generators: Vec<GroupElement>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elements == other.elements
    }
}

impl Eq for Lattice {}

fn closure(g: &FiniteAbelianGroup, gens: &[usize]) -> Vec<bool> {
    let mut member = vec![false; g.order()];
    member[0] = true;
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = g.add(x, s);
            if !member[y] {
                member[y] = true;
                stack.push(y);
            }
        }
    }
    member
}

/// Subgroup generated by `generators`.
pub fn enumerate_subgroup(g: &FiniteAbelianGroup, generators: &[GroupElement]) -> Lattice {
    let gens: Vec<usize> = generators.iter().map(|x| g.index(x)).collect();
    Lattice::from_member(g.clone(), closure(g, &gens), generators.to_vec())
}

/// `K subset L`.
pub fn is_sublattice(k: &Lattice, l: &Lattice) -> bool {
    k.parent == l.parent && k.elements.iter().all(|&x| l.member[x])
}

/// Every subgroup of `g`, ordered by size and then by element list.
pub fn all_subgroups(g: &FiniteAbelianGroup) -> Vec<Lattice> {
    let mut cyclic: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut cyclic_gen = Vec::new();
    for x in 0..g.order() {
        let m = closure(g, &[x]);
        let elems: Vec<usize> = (0..g.order()).filter(|&i| m[i]).collect();
        if cyclic.insert(elems) {
            cyclic_gen.push(x);
        }
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut found: Vec<Lattice> = Vec::new();
    let mut frontier = vec![enumerate_subgroup(g, &[])];
    seen.insert(vec![0]);
    while let Some(h) = frontier.pop() {
        for &c in &cyclic_gen {
            if h.member[c] {
                continue;
            }
            let mut gens: Vec<GroupElement> = h.generators.clone();
            gens.push(g.element(c));
            let bigger = enumerate_subgroup(g, &gens);
            if seen.insert(bigger.elements.clone()) {
                frontier.push(bigger);
            }
        }
        found.push(h);
    }
    found.sort_by(|a, b| {
        a.elements
            .len()
            .cmp(&b.elements.len())
            .then_with(|| a.elements.cmp(&b.elements))
    });
    found
}

impl Lattice {
    fn from_member(
        parent: FiniteAbelianGroup,
        member: Vec<bool>,
        generators: Vec<GroupElement>,
    ) -> Self {
        let elements = (0..parent.order()).filter(|&i| member[i]).collect();
        Self {
            parent,
            elements,
            member,
            generators,
        }
    }

    /// Subgroup with the given member set, which must be closed; generators
    /// are chosen greedily in index order.
    fn from_closed_set(parent: FiniteAbelianGroup, member: Vec<bool>) -> Self {
        let mut gens = Vec::new();
        let mut current = closure(&parent, &[]);
        for x in 0..parent.order() {
            if member[x] && !current[x] {
                gens.push(x);
                current = closure(&parent, &gens);
            }
        }
        debug_assert_eq!(current, member);
        let generators = gens.iter().map(|&x| parent.element(x)).collect();
        Self::from_member(parent, member, generators)
    }

    /// Parses generator tuples separated by `;`, e.g. `"(1,2);(0,2)"`.
    /// An empty string gives the trivial subgroup.
    pub fn parse(g: &FiniteAbelianGroup, spec: &str) -> Result<Self> {
        let gens = spec
            .split(';')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| g.parse_element(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(enumerate_subgroup(g, &gens))
    }

    pub fn trivial(g: &FiniteAbelianGroup) -> Self {
        enumerate_subgroup(g, &[])
    }

    pub fn whole(g: &FiniteAbelianGroup) -> Self {
        Self::from_closed_set(g.clone(), vec![true; g.order()])
    }

    pub fn parent(&self) -> &FiniteAbelianGroup {
        &self.parent
    }

    pub fn element_indices(&self) -> &[usize] {
        &self.elements
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.elements
            .iter()
            .map(|&i| self.parent.element(i))
            .collect()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        self.member[idx]
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.member[self.parent.index(x)]
    }

    /// `[G : L]`, which is also the measure of a fundamental domain.
    pub fn index(&self) -> usize {
        self.parent.order() / self.elements.len()
    }

    /// `{ alpha : (l, alpha) = 1 for all l in L }`.
    pub fn annihilator(&self) -> Self {
        let g = &self.parent;
        let gens: Vec<usize> = self.generators.iter().map(|x| g.index(x)).collect();
        let member = (0..g.order())
            .map(|a| gens.iter().all(|&l| g.pairing_phase(l, a) == 0))
            .collect();
        Self::from_closed_set(g.clone(), member)
    }

    /// Canonical spec string such as `"(1,2);(0,2)"`.
    pub fn spec(&self) -> String {
        let parts: Vec<String> = self.generators.iter().map(|x| x.to_string()).collect();
        parts.join(";")
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            f.write_str("{0}")
        } else {
            write!(f, "<{}>", self.spec())
        }
    }
}

/// One representative per coset of `subgroup` inside `ambient`, each the
/// lexicographically smallest element of its coset.
#[derive(Clone, Debug)]
pub struct CosetSection {
    ambient: Lattice,
    subgroup: Lattice,
    reps: Vec<usize>,
    class: Vec<usize>,
}

impl CosetSection {
    /// Transversal of `subgroup` in the whole group.
    pub fn of(subgroup: &Lattice) -> Self {
        Self::within(&Lattice::whole(subgroup.parent()), subgroup)
            .expect("every subgroup is nested in the whole group")
    }

    /// Transversal of `subgroup` in `ambient`.
    pub fn within(ambient: &Lattice, subgroup: &Lattice) -> Result<Self> {
        if !is_sublattice(subgroup, ambient) {
            return Err(Error::NotNested);
        }
        let g = ambient.parent();
        let mut class = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        for &x in ambient.element_indices() {
            if class[x] != usize::MAX {
                continue;
            }
            for &h in subgroup.element_indices() {
                class[g.add(x, h)] = reps.len();
            }
            reps.push(x);
        }
        Ok(Self {
            ambient: ambient.clone(),
            subgroup: subgroup.clone(),
            reps,
            class,
        })
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn subgroup(&self) -> &Lattice {
        &self.subgroup
    }

    pub fn rep_indices(&self) -> &[usize] {
        &self.reps
    }

    pub fn reps(&self) -> Vec<GroupElement> {
        self.reps
            .iter()
            .map(|&i| self.ambient.parent().element(i))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Position of the coset containing `idx`, or `None` outside `ambient`.
    pub fn class_of(&self, idx: usize) -> Option<usize> {
        (self.class[idx] != usize::MAX).then_some(self.class[idx])
    }

    /// Representative of the coset containing `idx`.
    pub fn rep_of(&self, idx: usize) -> Option<usize> {
        self.class_of(idx).map(|c| self.reps[c])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(m: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(m).unwrap()
    }

    fn elems(l: &Lattice) -> Vec<Vec<u64>> {
        l.elements().iter().map(|e| e.coords().to_vec()).collect()
    }

    #[test]
    fn closure_examples() {
        let z4 = group(&[4]);
        assert_eq!(
            elems(&Lattice::parse(&z4, "(2)").unwrap()),
            vec![vec![0], vec![2]]
        );
        assert_eq!(elems(&Lattice::parse(&z4, "").unwrap()), vec![vec![0]]);
        let g = group(&[2, 4]);
        assert_eq!(
            elems(&Lattice::parse(&g, "(1,2)").unwrap()),
            vec![vec![0, 0], vec![1, 2]]
        );
    }

    #[test]
    fn sublattice_examples() {
        let z8 = group(&[8]);
        let k = Lattice::parse(&z8, "4").unwrap();
        let l = Lattice::parse(&z8, "2").unwrap();
        assert!(is_sublattice(&k, &l));
        assert!(is_sublattice(&l, &l));
        let z6 = group(&[6]);
        let k = Lattice::parse(&z6, "3").unwrap();
        let l = Lattice::parse(&z6, "2").unwrap();
        assert!(!is_sublattice(&k, &l));
    }

    #[test]
    fn annihilator_examples() {
        let z4 = group(&[4]);
        let l = Lattice::parse(&z4, "2").unwrap();
        assert_eq!(elems(&l.annihilator()), vec![vec![0], vec![2]]);
        assert_eq!(Lattice::whole(&z4).annihilator(), Lattice::trivial(&z4));
        assert_eq!(Lattice::trivial(&z4).annihilator(), Lattice::whole(&z4));
    }

    /// Annihilator by direct comparison of every pairing value.
    fn brute_annihilator(l: &Lattice) -> Vec<usize> {
        let g = l.parent();
        (0..g.order())
            .filter(|&a| {
                l.element_indices()
                    .iter()
                    .all(|&x| (g.pairing(x, a) - 1.0).norm() < 1e-12)
            })
            .collect()
    }

    #[test]
    fn duality_for_all_small_groups() {
        let shapes: &[&[u64]] = &[
            &[1],
            &[2],
            &[4],
            &[6],
            &[8],
            &[12],
            &[2, 2],
            &[2, 4],
            &[2, 6],
            &[3, 3],
            &[4, 4],
            &[2, 2, 2],
            &[2, 2, 4],
            &[64],
            &[2, 32],
            &[8, 8],
        ];
        for m in shapes {
            let g = group(m);
            for l in all_subgroups(&g) {
                let perp = l.annihilator();
                assert_eq!(perp.element_indices(), brute_annihilator(&l).as_slice());
                assert_eq!(l.len() * perp.len(), g.order());
                assert_eq!(perp.annihilator(), l);
            }
        }
    }

    #[test]
    fn quotient_sizes_match_across_duality() {
        for m in [&[8u64][..], &[12], &[2, 6], &[2, 2, 2]] {
            let g = group(m);
            let subs = all_subgroups(&g);
            for k in &subs {
                for l in subs.iter().filter(|l| is_sublattice(k, l)) {
                    let lk = CosetSection::within(l, k).unwrap();
                    let dual = CosetSection::within(&k.annihilator(), &l.annihilator()).unwrap();
                    assert_eq!(lk.len(), dual.len());
                }
            }
        }
    }

    #[test]
    fn subgroup_counts() {
        // Z_n has one subgroup per divisor; Z_2 x Z_2 has five
        assert_eq!(all_subgroups(&group(&[8])).len(), 4);
        assert_eq!(all_subgroups(&group(&[12])).len(), 6);
        assert_eq!(all_subgroups(&group(&[2, 2])).len(), 5);
        assert_eq!(all_subgroups(&group(&[2, 4])).len(), 8);
    }

    #[test]
    fn transversal_examples() {
        let z4 = group(&[4]);
        let t = CosetSection::of(&Lattice::parse(&z4, "2").unwrap());
        assert_eq!(t.rep_indices(), &[0, 1]);
        let t = CosetSection::of(&Lattice::whole(&z4));
        assert_eq!(t.rep_indices(), &[0]);
        let g = group(&[2, 2]);
        let t = CosetSection::of(&Lattice::parse(&g, "(1,1)").unwrap());
        let reps: Vec<Vec<u64>> = t.reps().iter().map(|e| e.coords().to_vec()).collect();
        assert_eq!(reps, vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn transversal_tiles() {
        let g = group(&[2, 6]);
        for h in all_subgroups(&g) {
            let t = CosetSection::of(&h);
            let mut hits = vec![0; g.order()];
            for &r in t.rep_indices() {
                for &x in h.element_indices() {
                    hits[g.add(r, x)] += 1;
                }
            }
            assert!(hits.iter().all(|&c| c == 1));
            assert_eq!(t.len() * h.len(), g.order());
            for x in 0..g.order() {
                let r = t.rep_of(x).unwrap();
                assert!(r <= x && h.contains_index(g.sub(x, r)));
            }
        }
    }

    #[test]
    fn nested_transversal_requires_nesting() {
        let z6 = group(&[6]);
        let k = Lattice::parse(&z6, "3").unwrap();
        let l = Lattice::parse(&z6, "2").unwrap();
        assert_eq!(CosetSection::within(&l, &k).unwrap_err(), Error::NotNested);
    }
}
