use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::intlat::IntMatrix;

/// A finite subgroup of `GL_n(Z)` with its multiplication table.
///
/// Element 0 is the identity. Elements are numbered in breadth-first order from the
/// generators, and every element `b != 0` is recorded as `parent(b) * generator`.
pub struct FiniteMatrixGroup {
    degree: usize,
    elements: Vec<IntMatrix>,
    index: HashMap<IntMatrix, usize>,
    mul: Vec<usize>,
    inv: Vec<usize>,
    generators: Vec<usize>,
    generator_names: Vec<String>,
    tree: Vec<(usize, usize)>,
    subgroups: OnceLock<Vec<SubgroupHandle>>,
}

impl fmt::Debug for FiniteMatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMatrixGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generator_names)
            .finish()
    }
}

/// Closes the named generators under multiplication.
pub fn close_group(degree: usize, generators: &[(String, IntMatrix)], max_order: usize) -> Result<FiniteMatrixGroup> {
    for (name, g) in generators {
        if g.rows() != degree || g.cols() != degree {
            return Err(Error::DimensionMismatch(format!(
                "generator {name} is {}x{}, expected {degree}x{degree}",
                g.rows(),
                g.cols()
            )));
        }
        if !g.is_unimodular() {
            return Err(Error::NonUnimodularGenerator(name.clone()));
        }
    }
    let ngen = generators.len();
    let mut elements = vec![IntMatrix::identity(degree)];
    let mut index = HashMap::from([(elements[0].clone(), 0usize)]);
    let mut tree = vec![(0usize, usize::MAX)];
    let mut right: Vec<usize> = Vec::new();
    let mut x = 0;
    while x < elements.len() {
        for (gi, (_, g)) in generators.iter().enumerate() {
            let y = &elements[x] * g;
            let idx = match index.get(&y) {
                Some(&i) => i,
                None => {
                    if elements.len() >= max_order {
                        return Err(Error::OrderBoundExceeded(max_order));
                    }
                    let i = elements.len();
                    index.insert(y.clone(), i);
                    elements.push(y);
                    tree.push((x, gi));
                    i
                }
            };
            right.push(idx);
        }
        x += 1;
    }
    let n = elements.len();
    let mut mul = vec![0usize; n * n];
    for a in 0..n {
        mul[a * n] = a;
    }
    for b in 1..n {
        let (p, g) = tree[b];
        for a in 0..n {
            mul[a * n + b] = right[mul[a * n + p] * ngen + g];
        }
    }
    let mut inv = vec![0usize; n];
    for a in 0..n {
        inv[a] = (0..n).find(|&b| mul[a * n + b] == 0).expect("finite group has inverses");
    }
    let gen_idx = generators.iter().map(|(_, g)| index[g]).collect();
    Ok(FiniteMatrixGroup {
        degree,
        elements,
        index,
        mul,
        inv,
        generators: gen_idx,
        generator_names: generators.iter().map(|(s, _)| s.clone()).collect(),
        tree,
        subgroups: OnceLock::new(),
    })
}

impl FiniteMatrixGroup {
    pub fn trivial(degree: usize) -> Self {
        close_group(degree, &[], 1).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &IntMatrix {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn index_of(&self, m: &IntMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `a^-1 b a`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), b), a)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    /// `(parent, generator position)` with `element = parent * generator`; identity has `usize::MAX`.
    pub fn spanning_tree(&self) -> &[(usize, usize)] {
        &self.tree
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Evaluates a word of `(generator position, inverted)` letters.
    pub fn evaluate_word(&self, word: &[(usize, bool)]) -> usize {
        word.iter().fold(0, |acc, &(g, inverted)| {
            let e = self.generators[g];
            self.mul(acc, if inverted { self.inv(e) } else { e })
        })
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> SubgroupHandle {
        let elements = self.closure(gens);
        self.handle(elements)
    }

    pub fn whole(&self) -> SubgroupHandle {
        self.handle((0..self.order()).collect())
    }

    pub fn trivial_subgroup(&self) -> SubgroupHandle {
        self.handle(vec![0])
    }

    fn handle(&self, elements: Vec<usize>) -> SubgroupHandle {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for &e in &elements {
            if span.binary_search(&e).is_err() {
                gens.push(e);
                span = self.closure(&gens);
            }
        }
        let members: HashSet<usize> = elements.iter().copied().collect();
        let is_normal = self
            .generators
            .iter()
            .all(|&g| gens.iter().all(|&h| members.contains(&self.conj(g, h))));
        SubgroupHandle { elements, generators: gens, is_normal }
    }

    /// All subgroups ordered by size, then by their sorted element lists.
    pub fn subgroups(&self) -> &[SubgroupHandle] {
        self.subgroups.get_or_init(|| {
            let mut found: HashSet<Vec<usize>> = HashSet::new();
            let mut cyclic: Vec<Vec<usize>> = Vec::new();
            for g in 0..self.order() {
                let c = self.closure(&[g]);
                if found.insert(c.clone()) {
                    cyclic.push(c);
                }
            }
            let mut all: Vec<Vec<usize>> = cyclic.clone();
            let mut i = 0;
            while i < all.len() {
                let h = all[i].clone();
                for c in &cyclic {
                    if c.iter().all(|x| h.binary_search(x).is_ok()) {
                        continue;
                    }
                    let mut gens = h.clone();
                    gens.extend(c.iter().copied());
                    let j = self.closure(&gens);
                    if found.insert(j.clone()) {
                        all.push(j);
                    }
                }
                i += 1;
            }
            all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            all.into_iter().map(|e| self.handle(e)).collect()
        })
    }

    /// The subgroup as a group in its own right, with the embedding of its elements.
    pub fn subgroup_group(&self, h: &SubgroupHandle) -> (Arc<FiniteMatrixGroup>, Vec<usize>) {
        let gens: Vec<(String, IntMatrix)> = h
            .generators
            .iter()
            .enumerate()
            .map(|(i, &g)| (format!("h{i}"), self.elements[g].clone()))
            .collect();
        let sub = close_group(self.degree, &gens, h.order()).expect("subgroup of a finite group closes");
        let embed = sub.elements().iter().map(|m| self.index[m]).collect();
        (Arc::new(sub), embed)
    }

    /// `G/H` realized as permutations of the left cosets.
    pub fn quotient(&self, h: &SubgroupHandle) -> Result<QuotientGroup> {
        if !h.is_normal {
            return Err(Error::NonNormalSubgroupForResidualAction);
        }
        let n = self.order();
        let rep_of: Vec<usize> = (0..n)
            .map(|g| h.elements.iter().map(|&x| self.mul(g, x)).min().expect("nonempty"))
            .collect();
        let mut reps: Vec<usize> = rep_of.clone();
        reps.sort_unstable();
        reps.dedup();
        let k = reps.len();
        let coset: HashMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let perm = |g: usize| -> IntMatrix {
            let mut p = IntMatrix::zeros(k, k);
            for (j, &r) in reps.iter().enumerate() {
                p.set(coset[&rep_of[self.mul(g, r)]], j, 1.into());
            }
            p
        };
        let gens: Vec<(String, IntMatrix)> = self
            .generators
            .iter()
            .zip(&self.generator_names)
            .map(|(&g, name)| (name.clone(), perm(g)))
            .collect();
        let q = close_group(k, &gens, k)?;
        let image: Vec<usize> = (0..n).map(|g| q.index_of(&perm(g)).expect("coset permutation")).collect();
        let mut lift = vec![usize::MAX; q.order()];
        for g in 0..n {
            if lift[image[g]] == usize::MAX {
                lift[image[g]] = g;
            }
        }
        Ok(QuotientGroup { group: Arc::new(q), image, lift })
    }
}

/// A subgroup as a sorted set of element indices of its parent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupHandle {
    pub elements: Vec<usize>,
    pub generators: Vec<usize>,
    pub is_normal: bool,
}

impl SubgroupHandle {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

/// `G/H` with the projection and the minimal-index lift of each coset.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub group: Arc<FiniteMatrixGroup>,
    pub image: Vec<usize>,
    pub lift: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(gens: &[&[&[i64]]]) -> FiniteMatrixGroup {
        let n = gens.first().map_or(1, |g| g.len());
        let g: Vec<(String, IntMatrix)> =
            gens.iter().enumerate().map(|(i, m)| (format!("g{i}"), IntMatrix::from_i64(m))).collect();
        close_group(n, &g, 512).unwrap()
    }

    #[test]
    fn closure_orders() {
        assert_eq!(group(&[&[&[-1]]]).order(), 2);
        assert_eq!(group(&[&[&[0, 1], &[1, 0]]]).order(), 2);
        assert_eq!(group(&[&[&[0, -1], &[1, 0]]]).order(), 4);
        let s3 = group(&[&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]], &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]]);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn table_matches_products() {
        let g = group(&[&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 1]], &[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]]);
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(&(g.element(a) * g.element(b)), g.element(g.mul(a, b)));
            }
            assert!(g.element(g.mul(a, g.inv(a))).is_identity());
        }
    }

    #[test]
    fn rejects_bad_generators() {
        let bad = [("g".to_string(), IntMatrix::from_i64(&[&[2]]))];
        assert_eq!(close_group(1, &bad, 8).unwrap_err(), Error::NonUnimodularGenerator("g".into()));
        let inf = [("g".to_string(), IntMatrix::from_i64(&[&[1, 1], &[0, 1]]))];
        assert_eq!(close_group(2, &inf, 8).unwrap_err(), Error::OrderBoundExceeded(8));
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(FiniteMatrixGroup::trivial(1).subgroups().len(), 1);
        assert_eq!(group(&[&[&[0, -1], &[1, 0]]]).subgroups().len(), 3);
        let v4 = group(&[&[&[-1, 0], &[0, 1]], &[&[1, 0], &[0, -1]]]);
        assert_eq!(v4.subgroups().len(), 5);
        let s3 = group(&[&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]], &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]]);
        let subs = s3.subgroups();
        assert_eq!(subs.len(), 6);
        assert_eq!(subs.iter().filter(|h| h.is_normal).count(), 3);
    }

    #[test]
    fn quotient_by_center() {
        let c4 = group(&[&[&[0, -1], &[1, 0]]]);
        let z = c4.subgroups().iter().find(|h| h.order() == 2).unwrap().clone();
        let q = c4.quotient(&z).unwrap();
        assert_eq!(q.group.order(), 2);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(q.image[c4.mul(a, b)], q.group.mul(q.image[a], q.image[b]));
            }
        }
    }
}
