//! Root systems of the simple types, their Cartan pairings, and the highest
//! root.
//!
//! Roots are integer coefficient vectors over the simple roots; no Euclidean
//! realization is ever materialized. The invariant symmetric form is stored
//! in the overall scale that makes it integral with short roots of square 2
//! (so long roots have square 2, 4, or 6 depending on the type); the Cartan
//! pairing `<a, b> = 2(a,b)/(b,b)` is independent of that scale.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A simple type together with its rank, e.g. `A2`, `D4`, `E8`.
///
/// Parsing validates only the shape; whether the combination names a simple
/// root system is decided by [`build_root_system`], and whether a theorem
/// applies to it is policy that lives in `certify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct TypeRank {
    pub label: TypeLabel,
    pub rank: usize,
}

impl fmt::Display for TypeRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label, self.rank)
    }
}

impl FromStr for TypeRank {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let label = match chars.next() {
            Some('A') | Some('a') => TypeLabel::A,
            Some('B') | Some('b') => TypeLabel::B,
            Some('C') | Some('c') => TypeLabel::C,
            Some('D') | Some('d') => TypeLabel::D,
            Some('E') | Some('e') => TypeLabel::E,
            Some('F') | Some('f') => TypeLabel::F,
            Some('G') | Some('g') => TypeLabel::G,
            _ => return Err(Error::InvalidType(format!("cannot parse type `{s}`"))),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.len() > 3 {
            return Err(Error::InvalidType(format!("cannot parse rank in `{s}`")));
        }
        let rank: usize = digits
            .parse()
            .map_err(|_| Error::InvalidType(format!("cannot parse rank in `{s}`")))?;
        if rank == 0 {
            return Err(Error::InvalidType("rank must be positive".into()));
        }
        Ok(TypeRank { label, rank })
    }
}

/// A root or weight as an integer vector over the simple roots.
pub type RootVec = Vec<i64>;

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub type_rank: TypeRank,
    pub rank: usize,
    /// Invariant form (alpha_i, alpha_j), integral, short roots of square 2.
    pub sym: Vec<Vec<i64>>,
    /// cartan_matrix[i][j] = <alpha_i, alpha_j> = 2(alpha_i,alpha_j)/(alpha_j,alpha_j).
    pub cartan_matrix: Vec<Vec<i64>>,
    /// (alpha_i, alpha_i) per simple root.
    pub length_squares: Vec<i64>,
    /// All roots, sorted by (height, lexicographic coefficients).
    pub roots: Vec<RootVec>,
    pub highest_root: RootVec,
    index: BTreeMap<RootVec, usize>,
}

fn simple_root_form(tr: TypeRank) -> Result<Vec<Vec<i64>>> {
    let l = tr.rank;
    let valid = match tr.label {
        TypeLabel::A => l >= 1,
        TypeLabel::B | TypeLabel::C => l >= 2,
        TypeLabel::D => l >= 3,
        TypeLabel::E => (6..=8).contains(&l),
        TypeLabel::F => l == 4,
        TypeLabel::G => l == 2,
    };
    if !valid {
        return Err(Error::InvalidType(format!(
            "{tr} is not a simple type (e.g. D requires rank >= 3)"
        )));
    }
    let mut sym = vec![vec![0i64; l]; l];
    let mut chain = |i: usize, j: usize, v: i64| {
        sym[i][j] = v;
        sym[j][i] = v;
    };
    match tr.label {
        TypeLabel::A => {
            for i in 0..l - 1 {
                chain(i, i + 1, -1);
            }
            for i in 0..l {
                sym[i][i] = 2;
            }
        }
        TypeLabel::B => {
            // alpha_1..alpha_{l-1} long (square 4), alpha_l short (square 2)
            for i in 0..l - 2 {
                chain(i, i + 1, -2);
            }
            chain(l - 2, l - 1, -2);
            for i in 0..l - 1 {
                sym[i][i] = 4;
            }
            sym[l - 1][l - 1] = 2;
        }
        TypeLabel::C => {
            // alpha_1..alpha_{l-1} short (square 2), alpha_l long (square 4)
            for i in 0..l - 2 {
                chain(i, i + 1, -1);
            }
            chain(l - 2, l - 1, -2);
            for i in 0..l - 1 {
                sym[i][i] = 2;
            }
            sym[l - 1][l - 1] = 4;
        }
        TypeLabel::D => {
            for i in 0..l - 2 {
                chain(i, i + 1, -1);
            }
            chain(l - 3, l - 1, -1);
            for i in 0..l {
                sym[i][i] = 2;
            }
        }
        TypeLabel::E => {
            // Bourbaki numbering: chain 1-3-4-5-6(-7-8), node 2 attached to 4.
            chain(0, 2, -1);
            chain(1, 3, -1);
            chain(2, 3, -1);
            chain(3, 4, -1);
            chain(4, 5, -1);
            if l >= 7 {
                chain(5, 6, -1);
            }
            if l == 8 {
                chain(6, 7, -1);
            }
            for i in 0..l {
                sym[i][i] = 2;
            }
        }
        TypeLabel::F => {
            // alpha_1, alpha_2 long; alpha_3, alpha_4 short
            chain(0, 1, -2);
            chain(1, 2, -2);
            chain(2, 3, -1);
            sym[0][0] = 4;
            sym[1][1] = 4;
            sym[2][2] = 2;
            sym[3][3] = 2;
        }
        TypeLabel::G => {
            // alpha_1 short, alpha_2 long; theta = 3 alpha_1 + 2 alpha_2
            chain(0, 1, -3);
            sym[0][0] = 2;
            sym[1][1] = 6;
        }
    }
    Ok(sym)
}

impl RootSystem {
    pub fn sym_product(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut acc = 0i64;
        for (i, ai) in a.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if *bj != 0 {
                    acc += ai * self.sym[i][j] * bj;
                }
            }
        }
        acc
    }

    /// Cartan pairing `<a, b> = 2 (a, b) / (b, b)`; `b` must be a root.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> Result<i64> {
        if b.iter().all(|x| *x == 0) {
            return Err(Error::ZeroVector("pairing against the zero vector".into()));
        }
        if !self.index.contains_key(b) {
            return Err(Error::IndexOutOfRange(format!("{b:?} is not a root")));
        }
        let num = 2 * self.sym_product(a, b);
        let den = self.sym_product(b, b);
        if num % den != 0 {
            return Err(Error::Internal(format!(
                "pairing <{a:?}, {b:?}> = {num}/{den} is not an integer"
            )));
        }
        Ok(num / den)
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.index.contains_key(v)
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn root(&self, i: usize) -> &RootVec {
        &self.roots[i]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn height(&self, v: &[i64]) -> i64 {
        v.iter().sum()
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &RootVec> {
        self.roots.iter().filter(|r| self.height(r) > 0)
    }

    pub fn simple_root(&self, i: usize) -> RootVec {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }

    /// Level of a root against the highest root: `<alpha, theta>`.
    pub fn level(&self, alpha: &[i64]) -> i64 {
        let num = 2 * self.sym_product(alpha, &self.highest_root);
        let den = self.sym_product(&self.highest_root, &self.highest_root);
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// Partition of the roots by level; for the simple types the levels are
    /// exactly -2..2 with the top level `{theta}`.
    pub fn level_partition(&self) -> BTreeMap<i64, Vec<RootVec>> {
        let mut out: BTreeMap<i64, Vec<RootVec>> = BTreeMap::new();
        for r in &self.roots {
            out.entry(self.level(r)).or_default().push(r.clone());
        }
        out
    }

    /// Largest k >= 0 with `b - k a` still a root (the down-length of the
    /// a-string through b).
    pub fn string_down(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut k = 0i64;
        let mut cur: RootVec = b.to_vec();
        loop {
            for (c, ai) in cur.iter_mut().zip(a) {
                *c -= ai;
            }
            if self.index.contains_key(&cur) {
                k += 1;
            } else {
                return k;
            }
        }
    }

    /// Largest k >= 0 with `b + k a` still a root.
    pub fn string_up(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut k = 0i64;
        let mut cur: RootVec = b.to_vec();
        loop {
            for (c, ai) in cur.iter_mut().zip(a) {
                *c += ai;
            }
            if self.index.contains_key(&cur) {
                k += 1;
            } else {
                return k;
            }
        }
    }
}

/// Construct the root system of a simple type.
///
/// Roots are enumerated by closing the simple roots under root strings and
/// are listed deterministically, sorted by height then lexicographically.
pub fn build_root_system(type_rank: TypeRank) -> Result<RootSystem> {
    let rank = type_rank.rank;
    let sym = simple_root_form(type_rank)?;
    let length_squares: Vec<i64> = (0..rank).map(|i| sym[i][i]).collect();
    let mut cartan_matrix = vec![vec![0i64; rank]; rank];
    for (i, row) in cartan_matrix.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let num = 2 * sym[i][j];
            debug_assert_eq!(num % sym[j][j], 0);
            *entry = num / sym[j][j];
        }
    }

    // Close the positive roots under root strings, working up by height.
    let sym_of = |a: &[i64], b: &[i64]| -> i64 {
        let mut acc = 0;
        for i in 0..rank {
            for j in 0..rank {
                acc += a[i] * sym[i][j] * b[j];
            }
        }
        acc
    };
    let mut positives: std::collections::BTreeSet<RootVec> = Default::default();
    let mut level: Vec<RootVec> = Vec::new();
    for i in 0..rank {
        let mut v = vec![0; rank];
        v[i] = 1;
        positives.insert(v.clone());
        level.push(v);
    }
    // Strict height order: the down-string count for a root of height h only
    // consults roots of smaller height, which are all present by then.
    while !level.is_empty() {
        let mut next: std::collections::BTreeSet<RootVec> = Default::default();
        for beta in &level {
            for i in 0..rank {
                let mut alpha = vec![0; rank];
                alpha[i] = 1;
                let mut p = 0i64;
                let mut cur = beta.clone();
                loop {
                    cur[i] -= 1;
                    if positives.contains(&cur) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing = 2 * sym_of(beta, &alpha) / sym[i][i];
                let q = p - pairing;
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !positives.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        positives.extend(next.iter().cloned());
        level = next.into_iter().collect();
    }

    let mut roots: Vec<RootVec> = positives
        .iter()
        .map(|r| r.iter().map(|x| -x).collect())
        .chain(positives.iter().cloned())
        .collect();
    roots.sort_by(|a, b| {
        let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });

    let highest_root = roots.last().expect("nonempty").clone();
    let top_height: i64 = highest_root.iter().sum();
    let at_top = roots
        .iter()
        .filter(|r| r.iter().sum::<i64>() == top_height)
        .count();
    if at_top != 1 {
        return Err(Error::Internal(format!(
            "{type_rank}: highest root is not unique at height {top_height}"
        )));
    }
    for i in 0..rank {
        let mut up = highest_root.clone();
        up[i] += 1;
        if positives.contains(&up) {
            return Err(Error::Internal(
                "theta + alpha_i is a root; enumeration is inconsistent".into(),
            ));
        }
    }

    let index: BTreeMap<RootVec, usize> = roots
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), i))
        .collect();

    let rs = RootSystem {
        type_rank,
        rank,
        sym,
        cartan_matrix,
        length_squares,
        roots,
        highest_root,
        index,
    };

    // Roots come in +- pairs and every Cartan pairing is an integer.
    for r in &rs.roots {
        let neg: RootVec = r.iter().map(|x| -x).collect();
        if !rs.index.contains_key(&neg) {
            return Err(Error::Internal(format!("missing -alpha for {r:?}")));
        }
        for s in &rs.roots {
            rs.pairing(r, s)?;
        }
    }
    Ok(rs)
}

/// Expected dimension of the simple Lie algebra: rank + number of roots.
pub fn algebra_dim(rs: &RootSystem) -> usize {
    rs.rank + rs.roots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn parse_type_rank() {
        assert_eq!("A2".parse::<TypeRank>().unwrap().to_string(), "A2");
        assert_eq!("e6".parse::<TypeRank>().unwrap().to_string(), "E6");
        assert!("D".parse::<TypeRank>().is_err());
        assert!("H3".parse::<TypeRank>().is_err());
        assert!("A0".parse::<TypeRank>().is_err());
        assert!("A12345".parse::<TypeRank>().is_err());
        // parse accepts shapes the builder rejects
        assert!("D2".parse::<TypeRank>().is_ok());
        assert!(build_root_system("D2".parse().unwrap()).is_err());
        assert!(build_root_system("B1".parse().unwrap()).is_err());
        assert!(build_root_system("E9".parse().unwrap()).is_err());
    }

    #[test]
    fn a2_has_six_roots_and_theta() {
        let r = rs("A2");
        assert_eq!(r.num_roots(), 6);
        assert_eq!(r.highest_root, vec![1, 1]);
    }

    #[test]
    fn b3_and_g2_highest_roots() {
        assert_eq!(rs("B3").highest_root, vec![1, 2, 2]);
        assert_eq!(rs("G2").highest_root, vec![3, 2]);
    }

    #[test]
    fn root_counts_match_dimensions() {
        for (t, dim) in [
            ("A2", 8),
            ("G2", 14),
            ("B3", 21),
            ("D4", 28),
            ("F4", 52),
            ("C3", 21),
        ] {
            let r = rs(t);
            assert_eq!(algebra_dim(&r), dim, "{t}");
        }
        assert_eq!(algebra_dim(&rs("E8")), 248);
        assert_eq!(algebra_dim(&rs("A1")), 3);
    }

    #[test]
    fn pairing_of_root_with_itself_is_two() {
        for t in ["A2", "B3", "G2", "D4"] {
            let r = rs(t);
            for root in r.roots.clone() {
                assert_eq!(r.pairing(&root, &root).unwrap(), 2);
            }
        }
    }

    #[test]
    fn pairing_rejects_zero_and_nonroots() {
        let r = rs("A2");
        assert!(r.pairing(&[1, 1], &[0, 0]).is_err());
        assert!(r.pairing(&[1, 1], &[2, 0]).is_err());
    }

    #[test]
    fn theta_levels() {
        for t in ["A2", "B3", "C3", "G2", "D4", "F4", "A1"] {
            let r = rs(t);
            let parts = r.level_partition();
            assert_eq!(parts[&2], vec![r.highest_root.clone()], "{t}");
            let neg: RootVec = r.highest_root.iter().map(|x| -x).collect();
            assert_eq!(parts[&-2], vec![neg], "{t}");
            for (lvl, roots) in &parts {
                assert!((-2..=2).contains(lvl), "{t}: level {lvl}");
                assert_eq!(roots.len(), parts[&-lvl].len(), "{t}");
            }
        }
    }

    #[test]
    fn a2_level_sizes() {
        let parts = rs("A2").level_partition();
        assert_eq!(parts[&1].len(), 2);
        assert!(!parts.contains_key(&0));
    }

    #[test]
    fn distinguished_simple_root_for_non_a_types() {
        // Exactly one simple root pairs nontrivially with theta (value 1, and
        // it is long) for the non-A non-C types; A2 has two.
        for t in ["B3", "B4", "D4", "D5", "G2", "F4", "E6"] {
            let r = rs(t);
            let hits: Vec<usize> = (0..r.rank)
                .filter(|i| r.pairing(&r.simple_root(*i), &r.highest_root).unwrap() != 0)
                .collect();
            assert_eq!(hits.len(), 1, "{t}");
            let k = hits[0];
            assert_eq!(r.pairing(&r.simple_root(k), &r.highest_root).unwrap(), 1);
            assert_eq!(
                r.length_squares[k],
                *r.length_squares.iter().max().unwrap(),
                "{t}"
            );
        }
        let a2 = rs("A2");
        let hits: Vec<i64> = (0..2)
            .map(|i| a2.pairing(&a2.simple_root(i), &a2.highest_root).unwrap())
            .collect();
        assert_eq!(hits, vec![1, 1]);
    }

    #[test]
    fn string_property() {
        // q - p = -<beta, alpha> for the alpha-string through beta.
        for t in ["A2", "B3", "G2", "C3"] {
            let r = rs(t);
            for beta in r.roots.clone() {
                for i in 0..r.rank {
                    let alpha = r.simple_root(i);
                    if beta == alpha || beta.iter().zip(&alpha).all(|(b, a)| *b == -a) {
                        continue;
                    }
                    let p = r.string_down(&alpha, &beta);
                    let q = r.string_up(&alpha, &beta);
                    assert_eq!(
                        q - p,
                        -r.pairing(&beta, &alpha).unwrap(),
                        "{t} {beta:?} {i}"
                    );
                }
            }
        }
    }

    #[test]
    fn level_negation_symmetry() {
        let r = rs("G2");
        for root in r.roots.clone() {
            let neg: RootVec = root.iter().map(|x| -x).collect();
            assert_eq!(r.level(&root), -r.level(&neg));
        }
    }

    #[test]
    fn deterministic_order() {
        let a = rs("D4");
        let b = rs("D4");
        assert_eq!(a.roots, b.roots);
        for w in a.roots.windows(2) {
            let (h0, h1): (i64, i64) = (w[0].iter().sum(), w[1].iter().sum());
            assert!(h0 < h1 || (h0 == h1 && w[0] < w[1]));
        }
    }
}
