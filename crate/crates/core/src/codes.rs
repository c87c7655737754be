//! Weight-2 binary codes under single adjacent transpositions.
//!
//! A transposition error swaps two adjacent bits. Balls are closed: swapping
//! two equal bits is a legal error that leaves the word unchanged.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::graphs::{cell_to_pair, pair_to_cell, Host, PackingSet, WindowSpec};

/// A binary word; bit 1 is the leftmost character of the text form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    bits: Vec<bool>,
}

impl Codeword {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.len() < 2 {
            return invalid(format!("codeword length must be at least 2, got {}", bits.len()));
        }
        Ok(Codeword { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Positions (1-based) of the ones.
    pub fn support(&self) -> Vec<usize> {
        (0..self.bits.len()).filter(|&i| self.bits[i]).map(|i| i + 1).collect()
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Codeword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("bad bit `{ch}` in `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Codeword::new(bits)
    }
}

/// Indicator word of the 2-subset `{a, b}` of `{1..n}`.
pub fn subset_to_codeword(a: &[usize], n: usize) -> Result<Codeword> {
    let set: BTreeSet<usize> = a.iter().copied().collect();
    if set.len() != 2 || a.len() != 2 {
        return invalid(format!("expected a 2-subset, got {a:?}"));
    }
    if set.iter().any(|&i| i == 0 || i > n) {
        return invalid(format!("subset {a:?} is not inside 1..={n}"));
    }
    let mut bits = vec![false; n];
    for i in set {
        bits[i - 1] = true;
    }
    Codeword::new(bits)
}

/// Inverse of [`subset_to_codeword`].
pub fn codeword_to_subset(u: &Codeword) -> Result<[usize; 2]> {
    match u.support().as_slice() {
        &[a, b] => Ok([a, b]),
        _ => invalid(format!("`{u}` does not have weight 2")),
    }
}

/// `u` together with every word obtained by swapping one adjacent pair.
pub fn transposition_ball(u: &Codeword) -> BTreeSet<Codeword> {
    let mut ball = BTreeSet::from([u.clone()]);
    for p in 0..u.len() - 1 {
        let mut v = u.clone();
        v.bits.swap(p, p + 1);
        ball.insert(v);
    }
    ball
}

/// A set of distinct weight-2 words of a common length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    length: usize,
    words: BTreeSet<Codeword>,
}

impl Code {
    pub fn new(length: usize, words: impl IntoIterator<Item = Codeword>) -> Result<Self> {
        if length < 2 {
            return invalid(format!("code length must be at least 2, got {length}"));
        }
        let mut set = BTreeSet::new();
        for w in words {
            if w.len() != length {
                return invalid(format!("word `{w}` does not have length {length}"));
            }
            if w.weight() != 2 {
                return invalid(format!("word `{w}` does not have weight 2"));
            }
            if !set.insert(w.clone()) {
                return invalid(format!("duplicate word `{w}`"));
            }
        }
        Ok(Code { length, words: set })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn words(&self) -> &BTreeSet<Codeword> {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// `n=<length> w=2` followed by one word per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={} w=2\n", self.length);
        for w in &self.words {
            out.push_str(&w.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("missing code header".into()))?;
        let length = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            [n, "w=2"] => n
                .strip_prefix("n=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad code header `{header}`")))?,
            _ => return Err(Error::Parse(format!("bad code header `{header}`"))),
        };
        let words = lines.map(str::parse).collect::<Result<Vec<Codeword>>>()?;
        Code::new(length, words)
    }
}

/// A pair of codewords whose balls meet, with a word in both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub first: Codeword,
    pub second: Codeword,
    pub common: Codeword,
}

/// `Ok(())` when all balls are pairwise disjoint, otherwise the first
/// violating pair in word order.
pub fn corrects_single_transposition(c: &Code) -> std::result::Result<(), Violation> {
    let balls: Vec<(&Codeword, BTreeSet<Codeword>)> = c.words.iter().map(|w| (w, transposition_ball(w))).collect();
    for (i, (u, bu)) in balls.iter().enumerate() {
        for (v, bv) in &balls[i + 1..] {
            if let Some(common) = bu.intersection(bv).next() {
                return Err(Violation { first: (*u).clone(), second: (*v).clone(), common: common.clone() });
            }
        }
    }
    Ok(())
}

/// Words `{x, y+1}` of length `n + 1` for a packing of the full `T(n)`.
pub fn code_from_packing(s: &PackingSet) -> Result<Code> {
    let n = match s.host {
        Host::Window(w) if w.is_full_triangle() => w.n,
        _ => return invalid(format!("code_from_packing needs a full triangle host, got `{}`", s.host.header())),
    };
    let length = n as usize + 1;
    let words = s
        .cells
        .iter()
        .map(|&c| {
            let (a, b) = cell_to_pair(c);
            subset_to_codeword(&[a as usize, b as usize], length)
        })
        .collect::<Result<Vec<_>>>()?;
    Code::new(length, words)
}

/// Inverse of [`code_from_packing`]: a code of length `n` as cells of `T(n-1)`.
pub fn packing_from_code(c: &Code) -> Result<PackingSet> {
    let n = c.length as i64 - 1;
    if n < 1 {
        return invalid("codes of length 2 or more map to T(n-1) with n-1 >= 1");
    }
    let cells = c
        .words
        .iter()
        .map(|w| codeword_to_subset(w).map(|[a, b]| pair_to_cell(a as i64, b as i64)))
        .collect::<Result<Vec<_>>>()?;
    PackingSet::new(WindowSpec::full(n)?, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{gamma_graph, graph_distance, Label};
    use crate::theory::construction_a;

    fn w(s: &str) -> Codeword {
        s.parse().unwrap()
    }

    fn weight_two(n: usize) -> Vec<Codeword> {
        let mut out = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                out.push(subset_to_codeword(&[a, b], n).unwrap());
            }
        }
        out
    }

    #[test]
    fn subsets() {
        assert_eq!(subset_to_codeword(&[1, 3], 5).unwrap().to_string(), "10100");
        assert_eq!(subset_to_codeword(&[2, 1], 2).unwrap().to_string(), "11");
        assert!(subset_to_codeword(&[1], 5).is_err());
        assert!(subset_to_codeword(&[1, 1], 5).is_err());
        assert!(subset_to_codeword(&[1, 6], 5).is_err());
        assert!(subset_to_codeword(&[1, 2, 3], 5).is_err());
        for n in 2..=12 {
            for u in weight_two(n) {
                let [a, b] = codeword_to_subset(&u).unwrap();
                assert_eq!(subset_to_codeword(&[a, b], n).unwrap(), u);
            }
        }
    }

    #[test]
    fn balls() {
        assert_eq!(transposition_ball(&w("1100")), BTreeSet::from([w("1100"), w("1010")]));
        assert_eq!(transposition_ball(&w("0110")), BTreeSet::from([w("0110"), w("1010"), w("0101")]));
        for n in 2..=10 {
            let g = gamma_graph(n).unwrap();
            for u in weight_two(n) {
                let v = g.index_of(&Label::Bits(u.to_string())).unwrap();
                let ball = transposition_ball(&u);
                assert_eq!(ball.len(), 1 + g.degree(v));
                assert!(ball.len() <= 5);
            }
        }
        // two isolated ones can each move either way
        assert_eq!(transposition_ball(&w("010010")).len(), 5);
    }

    #[test]
    fn correction_examples() {
        let ok = Code::new(6, [w("110000"), w("000011")]).unwrap();
        assert!(corrects_single_transposition(&ok).is_ok());
        let bad = Code::new(4, [w("1100"), w("0110")]).unwrap();
        let v = corrects_single_transposition(&bad).unwrap_err();
        assert_eq!(v.common, w("1010"));
        assert!(corrects_single_transposition(&Code::new(4, [w("0110")]).unwrap()).is_ok());
        assert!(Code::new(4, [w("1110")]).is_err());
        assert!(Code::new(4, [w("110")]).is_err());
    }

    #[test]
    fn disjoint_balls_iff_distance_three() {
        for n in 2..=10 {
            let g = gamma_graph(n).unwrap();
            let words = weight_two(n);
            for (i, u) in words.iter().enumerate() {
                for v in &words[i + 1..] {
                    let disjoint = transposition_ball(u).is_disjoint(&transposition_ball(v));
                    let a = g.index_of(&Label::Bits(u.to_string())).unwrap();
                    let b = g.index_of(&Label::Bits(v.to_string())).unwrap();
                    let d = graph_distance(&g, a, b).unwrap().unwrap();
                    assert_eq!(disjoint, d >= 3, "{u} {v}");
                }
            }
        }
    }

    #[test]
    fn packings_and_codes() {
        let a = construction_a(11).unwrap();
        let code = code_from_packing(&a).unwrap();
        assert_eq!((code.len(), code.length()), (15, 12));
        assert!(corrects_single_transposition(&code).is_ok());
        assert_eq!(packing_from_code(&code).unwrap(), a);
        assert_eq!(Code::from_text(&code.to_text()).unwrap(), code);
        assert!(code.to_text().starts_with("n=12 w=2\n"));

        let empty = PackingSet::empty(WindowSpec::full(4).unwrap());
        let c = code_from_packing(&empty).unwrap();
        assert!(c.is_empty() && corrects_single_transposition(&c).is_ok());

        let strip = PackingSet::empty(WindowSpec::strip(8, 5).unwrap());
        assert!(code_from_packing(&strip).is_err());
        assert!(Code::from_text("n=4 w=3\n").is_err());
    }
}
