//! Irreducible reduced root systems and their Weyl groups.
//!
//! Conventions: the Cartan matrix is `A[i][j] = <alpha_i, alpha_j^vee>`, so
//! the j-th column is the simple coroot `alpha_j^vee` written in the
//! fundamental-coweight basis. Simple roots are numbered as in Bourbaki
//! (for `B_n` the last simple root is short, for `C_n` it is long, for `G_2`
//! the first is short).

mod coweight;
mod weyl;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

pub use coweight::{coweight_box, dominant_up_to_height, Coweight};
pub use weyl::{IntMatrix, RootDatum, WeylElement, WeylGroup, DEFAULT_MAX_ORDER};

use crate::error::{Error, Result};
use crate::hecke::HeckeCharacter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::G => rank == 2,
            Family::F => rank == 4,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InadmissibleType { family: family.letter(), rank })
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D)
    }

    /// The Cartan matrix `A[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut a = vec![vec![0; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i32, aji: i32| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match self.family {
            Family::A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
            Family::B => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -2, -1);
            }
            Family::C => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -1, -2);
            }
            Family::D => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 3, n - 1, -1, -1);
            }
            Family::G => link(0, 1, -1, -3),
            Family::F => {
                link(0, 1, -1, -1);
                link(1, 2, -2, -1);
                link(2, 3, -1, -1);
            }
        }
        a
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::ParseType(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::ParseType(s.to_string()))?;
        CartanType::new(family, rank)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LengthClass {
    Short,
    Long,
}

/// A positive root with its coroot and length class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Coefficients in the simple-root basis (all non-negative).
    pub simple_coords: Vec<i32>,
    /// The coroot in the fundamental-coweight basis.
    pub coroot: Coweight,
    pub length: LengthClass,
}

impl Root {
    pub fn height(&self) -> i32 {
        self.simple_coords.iter().sum()
    }

    /// `<alpha, mu>` for a coweight `mu`.
    pub fn pair(&self, mu: &Coweight) -> i64 {
        self.simple_coords.iter().zip(mu.coords()).map(|(&c, &m)| c as i64 * m as i64).sum()
    }

    /// Index of the simple root this is, if any.
    pub fn simple_index(&self) -> Option<usize> {
        if self.height() == 1 {
            self.simple_coords.iter().position(|&c| c == 1)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i32>>,
    simple_lengths: Vec<LengthClass>,
    positive_roots: Vec<Root>,
    braid_orders: Vec<Vec<u32>>,
}

impl RootSystem {
    /// Build the root system, enumerating positive roots by reflection
    /// closure from the simple roots.
    pub fn new(cartan_type: CartanType) -> Self {
        let cartan = cartan_type.cartan_matrix();
        let n = cartan_type.rank;
        let simple_lengths = simple_root_lengths(&cartan);

        let braid_orders = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            1
                        } else {
                            match cartan[i][j] * cartan[j][i] {
                                0 => 2,
                                1 => 3,
                                2 => 4,
                                3 => 6,
                                p => unreachable!("invalid Cartan product {p}"),
                            }
                        }
                    })
                    .collect()
            })
            .collect();

        let simple_coroot = |j: usize| Coweight::new((0..n).map(|i| cartan[i][j]));
        let mut seen: HashMap<Vec<i32>, Root> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut coords = vec![0; n];
            coords[i] = 1;
            let root = Root { simple_coords: coords, coroot: simple_coroot(i), length: simple_lengths[i] };
            seen.insert(root.simple_coords.clone(), root.clone());
            queue.push_back(root);
        }
        while let Some(root) = queue.pop_front() {
            for j in 0..n {
                // s_j(beta) = beta - <beta, alpha_j^vee> alpha_j
                let pairing: i32 = (0..n).map(|i| root.simple_coords[i] * cartan[i][j]).sum();
                let mut coords = root.simple_coords.clone();
                coords[j] -= pairing;
                if coords.iter().any(|&c| c < 0) || seen.contains_key(&coords) {
                    continue;
                }
                // s_j(beta^vee) = beta^vee - <alpha_j, beta^vee> alpha_j^vee
                let shift = root.coroot.coords()[j];
                let coroot = &root.coroot - &simple_coroot(j).scaled(shift);
                let image = Root { simple_coords: coords, coroot, length: root.length };
                seen.insert(image.simple_coords.clone(), image.clone());
                queue.push_back(image);
            }
        }
        let mut positive_roots: Vec<Root> = seen.into_values().collect();
        positive_roots.sort_by(|a, b| a.height().cmp(&b.height()).then(a.simple_coords.cmp(&b.simple_coords)));

        RootSystem { cartan_type, cartan, simple_lengths, positive_roots, braid_orders }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn simple_length(&self, i: usize) -> LengthClass {
        self.simple_lengths[i]
    }

    pub fn simple_lengths(&self) -> &[LengthClass] {
        &self.simple_lengths
    }

    pub fn has_two_lengths(&self) -> bool {
        self.simple_lengths.iter().collect::<BTreeSet<_>>().len() == 2
    }

    pub fn braid_order(&self, i: usize, j: usize) -> u32 {
        self.braid_orders[i][j]
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank() })
        }
    }

    /// `alpha_i^vee` in the fundamental-coweight basis (column i of the Cartan matrix).
    pub fn simple_coroot(&self, i: usize) -> Coweight {
        Coweight::new((0..self.rank()).map(|r| self.cartan[r][i]))
    }

    /// `s_i(mu) = mu - <alpha_i, mu> alpha_i^vee`.
    pub fn reflect(&self, i: usize, mu: &Coweight) -> Coweight {
        let k = mu.coords()[i];
        if k == 0 {
            return mu.clone();
        }
        let mut out = mu.clone();
        for (r, c) in out.coords_mut().iter_mut().enumerate() {
            *c -= k * self.cartan[r][i];
        }
        out
    }

    /// Matrix of `s_i` acting on fundamental-coweight coordinates.
    pub fn reflection_matrix(&self, i: usize) -> IntMatrix {
        let n = self.rank();
        let mut m = IntMatrix::identity(n);
        for r in 0..n {
            m.set(r, i, m.get(r, i) - self.cartan[r][i]);
        }
        m
    }

    /// Half the sum of the coroots of the roots selected by `keep`.
    pub fn half_sum_coroots(&self, keep: impl Fn(&Root) -> bool) -> Result<Coweight> {
        let mut total = Coweight::zero(self.rank());
        for root in self.positive_roots.iter().filter(|r| keep(r)) {
            total = &total + &root.coroot;
        }
        if total.coords().iter().any(|c| c % 2 != 0) {
            return Err(Error::NonIntegralRho);
        }
        Ok(Coweight::new(total.coords().iter().map(|c| c / 2)))
    }

    /// `rho^vee`, the half sum of positive coroots.
    pub fn rho(&self) -> Coweight {
        self.half_sum_coroots(|_| true).expect("rho^vee is always integral")
    }

    /// `rho^vee_eps`: half the sum of coroots of positive roots on whose
    /// length class the character acts by `-1`.
    pub fn rho_eps(&self, eps: &HeckeCharacter) -> Result<Coweight> {
        self.half_sum_coroots(|r| eps.acts_by_minus_one_on(r.length))
    }

    /// `<2 rho, lambda>` computed as the sum of `<alpha, lambda>` over positive roots.
    pub fn two_rho_pairing(&self, lambda: &Coweight) -> i64 {
        self.positive_roots.iter().map(|r| r.pair(lambda)).sum()
    }

    pub fn count_of_length(&self, length: LengthClass) -> usize {
        self.positive_roots.iter().filter(|r| r.length == length).count()
    }
}

/// Relative squared lengths from the symmetrizability of the Cartan matrix:
/// `|alpha_i|^2 / |alpha_j|^2 = A_ij / A_ji` for linked nodes.
fn simple_root_lengths(cartan: &[Vec<i32>]) -> Vec<LengthClass> {
    let n = cartan.len();
    let mut norm: Vec<Option<i32>> = vec![None; n];
    norm[0] = Some(6);
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if i != j && cartan[i][j] != 0 && norm[j].is_none() {
                norm[j] = Some(norm[i].unwrap() * cartan[j][i] / cartan[i][j]);
                stack.push(j);
            }
        }
    }
    let norm: Vec<i32> = norm.into_iter().map(|x| x.expect("connected Dynkin diagram")).collect();
    let longest = *norm.iter().max().unwrap();
    norm.iter().map(|&x| if x == longest { LengthClass::Long } else { LengthClass::Short }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn admissible_types() {
        assert!("A1".parse::<CartanType>().is_ok());
        assert!("b2".parse::<CartanType>().is_ok());
        assert!("g2".parse::<CartanType>().is_ok());
        assert!("F4".parse::<CartanType>().is_ok());
        for bad in ["A0", "B1", "C1", "D2", "G3", "F3", "E6", "X", "A", ""] {
            assert!(bad.parse::<CartanType>().is_err(), "{bad}");
        }
    }

    #[test]
    fn positive_root_counts() {
        let expected = [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("A4", 10),
            ("B2", 4),
            ("B3", 9),
            ("B4", 16),
            ("C2", 4),
            ("C3", 9),
            ("C4", 16),
            ("D3", 6),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
        ];
        for (t, count) in expected {
            assert_eq!(rs(t).positive_roots().len(), count, "{t}");
        }
    }

    #[test]
    fn a1_coroot() {
        let a1 = rs("A1");
        assert_eq!(a1.positive_roots()[0].coroot.coords(), &[2]);
    }

    #[test]
    fn length_classes() {
        let b2 = rs("B2");
        assert_eq!(b2.simple_lengths(), &[LengthClass::Long, LengthClass::Short]);
        assert_eq!(b2.count_of_length(LengthClass::Short), 2);
        assert_eq!(b2.count_of_length(LengthClass::Long), 2);
        let c3 = rs("C3");
        assert_eq!(c3.simple_lengths(), &[LengthClass::Short, LengthClass::Short, LengthClass::Long]);
        let g2 = rs("G2");
        assert_eq!(g2.simple_lengths(), &[LengthClass::Short, LengthClass::Long]);
        assert_eq!(g2.count_of_length(LengthClass::Long), 3);
        let b3 = rs("B3");
        // long roots of B_n: +-e_i +- e_j, n(n-1) positive ones
        assert_eq!(b3.count_of_length(LengthClass::Long), 6);
        assert!(!rs("D4").has_two_lengths());
    }

    #[test]
    fn coroot_coordinates_are_cartan_columns() {
        for t in ["A3", "B3", "C3", "D4", "G2", "F4"] {
            let r = rs(t);
            for i in 0..r.rank() {
                let simple = r.positive_roots().iter().find(|x| x.simple_index() == Some(i)).unwrap();
                for j in 0..r.rank() {
                    assert_eq!(simple.coroot.coords()[j], r.cartan_matrix()[j][i]);
                }
            }
        }
    }

    #[test]
    fn simple_reflection_permutes_other_positive_roots() {
        for t in ["A3", "B3", "C3", "D4", "G2", "F4"] {
            let r = rs(t);
            let n = r.rank();
            let roots: BTreeSet<Vec<i32>> = r.positive_roots().iter().map(|x| x.simple_coords.clone()).collect();
            for i in 0..n {
                for beta in r.positive_roots() {
                    if beta.simple_index() == Some(i) {
                        continue;
                    }
                    let pairing: i32 = (0..n).map(|k| beta.simple_coords[k] * r.cartan_matrix()[k][i]).sum();
                    let mut image = beta.simple_coords.clone();
                    image[i] -= pairing;
                    assert!(
                        roots.contains(&image),
                        "{t}: s_{i} moved {:?} out of the positive roots",
                        beta.simple_coords
                    );
                }
            }
        }
    }

    #[test]
    fn reflections() {
        let a1 = rs("A1");
        assert_eq!(a1.reflect(0, &Coweight::new([1])), Coweight::new([-1]));

        for t in ["A3", "B2", "C3", "G2"] {
            let r = rs(t);
            let rho = r.rho();
            for i in 0..r.rank() {
                assert_eq!(r.reflect(i, &rho), &rho - &r.simple_coroot(i));
                let mu = Coweight::new((0..r.rank() as i32).map(|k| 2 * k - 1));
                assert_eq!(r.reflect(i, &r.reflect(i, &mu)), mu);
            }
        }

        // B2, short simple root is alpha_2; alpha_2^vee = column 2 = (-2, 2)
        let b2 = rs("B2");
        assert_eq!(b2.reflect(1, &Coweight::new([1, 1])), Coweight::new([3, -1]));
    }

    #[test]
    fn reflection_fixes_exactly_the_wall() {
        let r = rs("B3");
        for mu in coweight_box(3, 1, 200) {
            for i in 0..3 {
                assert_eq!(r.reflect(i, &mu) == mu, mu.coords()[i] == 0);
            }
        }
    }

    #[test]
    fn rho_is_all_ones() {
        for t in ["A1", "A3", "B2", "B4", "C3", "D4", "G2", "F4"] {
            let r = rs(t);
            assert!(r.rho().coords().iter().all(|&c| c == 1), "{t}");
        }
    }

    #[test]
    fn braid_orders() {
        assert_eq!(rs("A2").braid_order(0, 1), 3);
        assert_eq!(rs("B2").braid_order(0, 1), 4);
        assert_eq!(rs("G2").braid_order(1, 0), 6);
        assert_eq!(rs("A3").braid_order(0, 2), 2);
    }

    #[test]
    fn two_rho_pairing_of_fundamental() {
        let a1 = rs("A1");
        assert_eq!(a1.two_rho_pairing(&Coweight::new([1])), 1);
        // B2: positive roots a1, a2, a1+a2, a1+2a2 pair with omega_1 to 0+... = 1+0+1+1
        let b2 = rs("B2");
        assert_eq!(b2.two_rho_pairing(&Coweight::new([1, 0])), 3);
    }
}
