use std::fmt;

/// Permutation of `{0, .., r-1}`, stored as the image list.
///
/// Displayed and serialized 1-based, matching the usual `I_1, .., I_r`
/// numbering of components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Option<Perm> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Perm(images))
    }

    /// From a 1-based image list.
    pub fn from_one_based(images: &[usize]) -> Option<Perm> {
        if images.contains(&0) {
            return None;
        }
        Perm::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(r: usize) -> Perm {
        Perm((0..r).collect())
    }

    /// Swap of `i` and `j` (0-based).
    pub fn transposition(r: usize, i: usize, j: usize) -> Perm {
        let mut v: Vec<usize> = (0..r).collect();
        v.swap(i, j);
        Perm(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// All `r!` permutations in lexicographic order.
    pub fn all(r: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(r);
        let mut used = vec![false; r];
        fn rec(r: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if cur.len() == r {
                out.push(Perm(cur.clone()));
                return;
            }
            for i in 0..r {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(r, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        rec(r, &mut cur, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}
