use std::collections::HashMap;

use super::{Coweight, RootSystem};
use crate::error::{Error, Result};

/// Largest Weyl group enumerated unless the caller raises the bound.
/// Covers A1-A4, B2-B4, C2-C4, D3-D4 and G2; F4 (order 1152) needs an
/// explicit bound.
pub const DEFAULT_MAX_ORDER: usize = 400;

/// Square integer matrix acting on fundamental-coweight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i32>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> i32 {
        self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i32) {
        self.data[r * self.n + c] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == 0 {
                    continue;
                }
                for c in 0..n {
                    data[r * n + c] += a * other.data[k * n + c];
                }
            }
        }
        IntMatrix { n, data }
    }

    pub fn apply(&self, mu: &Coweight) -> Coweight {
        let n = self.n;
        let x = mu.coords();
        Coweight::new((0..n).map(|r| (0..n).map(|c| self.data[r * n + c] * x[c]).sum()))
    }

    pub fn is_negative_identity(&self) -> bool {
        let n = self.n;
        (0..n).all(|r| (0..n).all(|c| self.get(r, c) == if r == c { -1 } else { 0 }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// ShortLex-minimal reduced word (0-based simple reflection indices),
    /// read left to right: `w = s_{word[0]} s_{word[1]} ...`.
    pub reduced_word: Vec<usize>,
    pub action: IntMatrix,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.reduced_word.len()
    }

    pub fn sign(&self) -> i32 {
        if self.length().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn apply(&self, mu: &Coweight) -> Coweight {
        self.action.apply(mu)
    }
}

/// The finite Weyl group, enumerated breadth first by right multiplication
/// with simple reflections in index order. Element 0 is the identity and
/// elements appear in ShortLex order of their reduced words.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rank: usize,
    elements: Vec<WeylElement>,
    index: HashMap<IntMatrix, usize>,
    left_simple: Vec<Vec<usize>>,
    right_simple: Vec<Vec<usize>>,
    longest: usize,
}

impl WeylGroup {
    pub fn generate(rs: &RootSystem, max_order: usize) -> Result<Self> {
        let n = rs.rank();
        let gens: Vec<IntMatrix> = (0..n).map(|i| rs.reflection_matrix(i)).collect();
        let identity = IntMatrix::identity(n);
        let mut elements = vec![WeylElement { reduced_word: vec![], action: identity.clone() }];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut head = 0;
        while head < elements.len() {
            for (i, g) in gens.iter().enumerate() {
                let action = elements[head].action.mul(g);
                if index.contains_key(&action) {
                    continue;
                }
                if elements.len() >= max_order {
                    return Err(Error::GroupTooLarge { bound: max_order });
                }
                let mut word = elements[head].reduced_word.clone();
                word.push(i);
                index.insert(action.clone(), elements.len());
                elements.push(WeylElement { reduced_word: word, action });
            }
            head += 1;
        }

        let lookup = |m: &IntMatrix| index[m];
        let left_simple = elements.iter().map(|w| gens.iter().map(|g| lookup(&g.mul(&w.action))).collect()).collect();
        let right_simple = elements.iter().map(|w| gens.iter().map(|g| lookup(&w.action.mul(g))).collect()).collect();
        let longest = (0..elements.len()).max_by_key(|&k| elements[k].length()).unwrap();

        Ok(WeylGroup { rank: n, elements, index, left_simple, right_simple, longest })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &WeylElement {
        &self.elements[k]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> usize {
        self.longest
    }

    pub fn longest_element(&self) -> &WeylElement {
        &self.elements[self.longest]
    }

    /// Index of `s_i w`.
    pub fn left_mul_simple(&self, i: usize, w: usize) -> usize {
        self.left_simple[w][i]
    }

    /// Index of `w s_i`.
    pub fn right_mul_simple(&self, w: usize, i: usize) -> usize {
        self.right_simple[w][i]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].action.mul(&self.elements[b].action)]
    }

    pub fn simple(&self, i: usize) -> usize {
        self.right_simple[0][i]
    }

    pub fn index_of(&self, action: &IntMatrix) -> Option<usize> {
        self.index.get(action).copied()
    }

    /// Index of the product of a word of simple reflections.
    pub fn word_element(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |w, &i| self.right_mul_simple(w, i))
    }

    pub fn inverse(&self, w: usize) -> usize {
        let word = &self.elements[w].reduced_word;
        word.iter().rev().fold(0, |acc, &i| self.right_mul_simple(acc, i))
    }
}

/// A root system bundled with its enumerated Weyl group.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub roots: RootSystem,
    pub weyl: WeylGroup,
}

impl RootDatum {
    pub fn new(cartan: super::CartanType) -> Result<Self> {
        Self::with_max_order(cartan, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(cartan: super::CartanType, max_order: usize) -> Result<Self> {
        let roots = RootSystem::new(cartan);
        let weyl = WeylGroup::generate(&roots, max_order)?;
        Ok(RootDatum { roots, weyl })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    /// `(-1)^{l(w_0)}`.
    pub fn longest_sign(&self) -> i32 {
        self.weyl.longest_element().sign()
    }

    /// Number of positive roots sent to negative roots by `w^{-1}`, computed
    /// as `#{beta > 0 : <beta, w(rho^vee)> < 0}`.
    pub fn inversion_count(&self, w: usize) -> usize {
        let image = self.weyl.element(w).apply(&self.roots.rho());
        self.roots.positive_roots().iter().filter(|b| b.pair(&image) < 0).count()
    }
}
