//! Symmetric-group actions, symmetrization, commutative collapse and the
//! position combinatorics used by the harmonic decomposition.

use std::collections::{BTreeMap, BTreeSet};

use crate::comm::CommPoly;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::FreePoly;
use crate::scalar::Scalar;
use crate::word::{Letter, Mode, Word};

/// Default bound on `ℓ·d` for coset enumeration.
pub const DEFAULT_ENUM_CAP: usize = 8;

/// `σ[p]` for `p` homogeneous of degree `σ.degree()`.
pub fn permute(sigma: &Permutation, p: &FreePoly) -> Result<FreePoly> {
    p.require_homogeneous(sigma.degree())?;
    Ok(p.collect_like(p.terms().map(|(w, c)| (sigma.act(w), c.clone()))))
}

/// Distinct rearrangements of a multiset of letters, lexicographic.
pub fn rearrangements(letters: &[Letter]) -> Vec<Vec<Letter>> {
    let mut cur = letters.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn next_permutation(v: &mut [Letter]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn multiplicity_factorials(letters: &[Letter]) -> Scalar {
    let mut counts: BTreeMap<Letter, u32> = BTreeMap::new();
    for &l in letters {
        *counts.entry(l).or_default() += 1;
    }
    counts
        .values()
        .fold(Scalar::one(), |acc, &k| &acc * &Scalar::factorial(k))
}

/// `Symm[p]`, the average of `σ[p_d]` over `S_d` on each homogeneous component.
///
/// The orbit sum of a word visits each distinct rearrangement
/// `Π(multiplicity!)` times, so each rearrangement gets `c·Π(mult!)/d!`.
pub fn symmetrize(p: &FreePoly) -> FreePoly {
    let mut out = FreePoly::zero(p.g(), p.mode());
    for (w, c) in p.terms() {
        let d = w.len() as u32;
        let share = &(c * &multiplicity_factorials(w)) / &Scalar::factorial(d);
        for r in rearrangements(w) {
            out.add_term(Word(r), share.clone());
        }
    }
    out
}

pub fn is_symmetrized(p: &FreePoly) -> bool {
    symmetrize(p) == *p
}

/// The image of `p` when variables commute. Adjoint flags are dropped; if `p`
/// contains `h`, the result has `g + 1` variables with `h` last.
pub fn comm_collapse(p: &FreePoly) -> CommPoly {
    let with_h = p.has_direction();
    let g = p.g() + usize::from(with_h);
    let mut q = CommPoly::zero(g);
    for (w, c) in p.terms() {
        let mut e = vec![0u32; g];
        for l in w.iter() {
            let k = if l.is_dir() { g - 1 } else { l.index() - 1 };
            e[k] += 1;
        }
        q.add_term(e, c.clone());
    }
    q
}

/// The unique symmetrized polynomial whose commutative collapse is `q`.
pub fn lift_symm(q: &CommPoly, mode: Mode) -> FreePoly {
    let mut out = FreePoly::zero(q.g(), mode);
    for (e, c) in q.terms() {
        let letters: Vec<Letter> = e
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(Letter::x(i + 1), k as usize))
            .collect();
        let words = rearrangements(&letters);
        let share = c / &Scalar::from_int(words.len() as i64);
        for r in words {
            out.add_term(Word(r), share.clone());
        }
    }
    out
}

/// Variable support of each factor, with `h` reported as index 0.
fn support(p: &FreePoly) -> BTreeSet<usize> {
    p.terms()
        .flat_map(|(w, _)| w.iter().map(|l| l.index()).collect::<Vec<_>>())
        .collect()
}

/// True iff the factors have pairwise disjoint variable supports.
pub fn is_independent_product(factors: &[FreePoly]) -> bool {
    let mut seen = BTreeSet::new();
    for f in factors {
        for v in support(f) {
            if !seen.insert(v) {
                return false;
            }
        }
    }
    true
}

/// Result of [`neighbor_decompose`]: `p = Σ σ_I[x_i^{d_i}·p_I] + remainder`.
#[derive(Clone, Debug, PartialEq)]
pub struct NeighborSplit {
    pub pieces: Vec<(Permutation, FreePoly)>,
    pub remainder: FreePoly,
}

impl NeighborSplit {
    pub fn reassemble(&self, i: usize, d_i: usize) -> Result<FreePoly> {
        let g = self.remainder.g();
        let mode = self.remainder.mode();
        let xi = FreePoly::word(g, mode, &vec![i; d_i]);
        let mut acc = self.remainder.clone();
        for (s, q) in &self.pieces {
            acc = acc.checked_add(&permute(s, &xi.checked_mul(q)?)?)?;
        }
        Ok(acc)
    }
}

/// The permutation placing the first `|positions|` letters of a word at
/// `positions` (0-based, ascending) and the rest, in order, elsewhere.
pub fn placement(d: usize, positions: &[usize]) -> Permutation {
    let mut img = vec![0; d];
    let mut inside = vec![false; d];
    for (r, &k) in positions.iter().enumerate() {
        img[k] = r;
        inside[k] = true;
    }
    let mut next = positions.len();
    for k in 0..d {
        if !inside[k] {
            img[k] = next;
            next += 1;
        }
    }
    Permutation::from_zero_based(img)
}

/// Splits off the words with exactly `d_i` occurrences of `x_i`, keyed by the
/// set `I` of positions of those occurrences. The permutation of a piece is
/// [`placement`] of `I`, so `σ_I[x_i^{d_i} m̄]` carries `x_i` exactly on `I`.
pub fn neighbor_decompose(p: &FreePoly, i: usize, d_i: usize) -> Result<NeighborSplit> {
    if i == 0 || i > p.g() {
        return Err(Error::IndexOutOfRange { index: i, g: p.g() });
    }
    let Some(d) = p.homogeneous_degree() else {
        if p.is_zero() {
            return Ok(NeighborSplit {
                pieces: vec![],
                remainder: p.clone(),
            });
        }
        return Err(Error::Precondition(
            "neighbor split needs a homogeneous polynomial".into(),
        ));
    };
    if p.degree_in(i) != d_i {
        return Err(Error::DegreeMismatch {
            expected: d_i,
            found: p.degree_in(i),
        });
    }
    let mut buckets: BTreeMap<Vec<usize>, Vec<(Word, Scalar)>> = BTreeMap::new();
    let mut rest = Vec::new();
    for (w, c) in p.terms() {
        let pos: Vec<usize> = (0..d).filter(|&k| w[k].is_var(i)).collect();
        if pos.len() < d_i {
            rest.push((w.clone(), c.clone()));
            continue;
        }
        if pos.iter().any(|&k| w[k].adjoint()) {
            return Err(Error::Precondition(
                "neighbor split of transposed letters".into(),
            ));
        }
        let others = Word((0..d).filter(|k| !pos.contains(k)).map(|k| w[k]).collect());
        buckets.entry(pos).or_default().push((others, c.clone()));
    }
    let pieces = buckets
        .into_iter()
        .map(|(pos, terms)| (placement(d, &pos), p.collect_like(terms)))
        .collect();
    Ok(NeighborSplit {
        pieces,
        remainder: p.collect_like(rest),
    })
}

/// `p = Σ_k p_[k]` with `deg_i ≡ k (mod ℓ)` on every term of `p_[k]`.
pub fn mod_ell_split(p: &FreePoly, i: usize, ell: u32) -> Vec<FreePoly> {
    let ell = ell as usize;
    (0..ell)
        .map(|k| p.filter(|w| w.count(i) % ell == k))
        .collect()
}

/// The block-position representative attached to a set partition of
/// `{0..ℓD}` into blocks of size `ℓ`, blocks listed by smallest element.
fn block_representative(blocks: &[Vec<usize>], ell: usize) -> Permutation {
    let n = blocks.len() * ell;
    let mut img = vec![0; n];
    for (t, b) in blocks.iter().enumerate() {
        for (r, &k) in b.iter().enumerate() {
            img[k] = t * ell + r;
        }
    }
    Permutation::from_zero_based(img)
}

fn set_partitions(n: usize, ell: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(free: &[usize], ell: usize, acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if free.is_empty() {
            out.push(acc.clone());
            return;
        }
        use itertools::Itertools;
        let first = free[0];
        let rest: Vec<usize> = free[1..].to_vec();
        for others in rest.iter().copied().combinations(ell - 1) {
            let mut block = vec![first];
            block.extend(&others);
            let remaining: Vec<usize> = rest
                .iter()
                .copied()
                .filter(|v| !others.contains(v))
                .collect();
            acc.push(block);
            rec(&remaining, ell, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(&(0..n).collect::<Vec<_>>(), ell, &mut Vec::new(), &mut out);
    out
}

/// One representative per coset of the block-preserving subgroup `P_{ℓ,d}`
/// in `S_{ℓd}`, each the lexicographically least member; `(ℓd)!/(d!(ℓ!)^d)`
/// of them.
///
/// With the action `σ[m]_k = m_{σ(k)}`, `π∘σ` and `σ` give the same set of
/// monomials from block words when `π ∈ P_{ℓ,d}`, so the classes are
/// `{π∘σ}`; a class is determined by which positions share a block.
pub fn coset_reps_pld(ell: usize, d: usize, cap: usize) -> Result<Vec<Permutation>> {
    if ell == 0 || ell * d > cap {
        return Err(Error::EnumerationCap {
            what: format!("ell*d = {} exceeds {cap}", ell * d),
        });
    }
    let mut reps: Vec<Permutation> = set_partitions(ell * d, ell)
        .iter()
        .map(|b| block_representative(b, ell))
        .collect();
    reps.sort();
    Ok(reps)
}

/// Representatives of the cosets `τ S_{d,g}` (stabilizer of `1..d`), one per
/// injection `(τ(1), …, τ(d))`, completed ascending.
pub fn coset_reps_sdg(d: usize, g: usize) -> Result<Vec<Permutation>> {
    if d > g {
        return Err(Error::Precondition(format!("d = {d} exceeds g = {g}")));
    }
    use itertools::Itertools;
    let mut out = Vec::new();
    for head in (0..g).permutations(d) {
        let mut img = head.clone();
        img.extend((0..g).filter(|v| !head.contains(v)));
        out.push(Permutation::from_zero_based(img));
    }
    out.sort();
    Ok(out)
}

/// True when every variable occurs 0 or `ℓ` times in every word.
pub fn is_fully_degree(p: &FreePoly, ell: u32) -> bool {
    p.terms().all(|(w, _)| {
        let mut counts: BTreeMap<Letter, usize> = BTreeMap::new();
        for &l in w.iter() {
            *counts.entry(l).or_default() += 1;
        }
        counts.values().all(|&k| k == ell as usize)
    })
}

/// Gathers equal letters of `w` into runs ordered by first appearance and
/// returns `(σ, u)` with `σ[u] = w`.
pub fn gather_letters(w: &Word) -> (Permutation, Word) {
    let mut owner: Vec<Letter> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (k, &letter) in w.iter().enumerate() {
        match owner.iter().position(|&o| o == letter) {
            Some(t) => blocks[t].push(k),
            None => {
                owner.push(letter);
                blocks.push(vec![k]);
            }
        }
    }
    let mut img = vec![0; w.len()];
    let mut offset = 0;
    for b in &blocks {
        for (r, &k) in b.iter().enumerate() {
            img[k] = offset + r;
        }
        offset += b.len();
    }
    let gathered = owner
        .iter()
        .zip(&blocks)
        .flat_map(|(&o, b)| std::iter::repeat_n(o, b.len()))
        .collect();
    (Permutation::from_zero_based(img), Word(gathered))
}

/// `p = Σ_i σ_i[P_i]` where each `P_i` is a combination of block words
/// `x_{τ(1)}^ℓ…x_{τ(D)}^ℓ` and the `σ_i` are [`coset_reps_pld`] members.
pub fn fully_degree_ell_split(p: &FreePoly, ell: u32) -> Result<Vec<(Permutation, FreePoly)>> {
    if ell == 0 {
        return Err(Error::Precondition("ell must be positive".into()));
    }
    if p.is_zero() {
        return Ok(vec![]);
    }
    p.homogeneous_degree()
        .ok_or(Error::NotHomogeneous(p.degree()))?;
    if p.has_direction() || !is_fully_degree(p, ell) {
        return Err(Error::NotFullyDegree { ell });
    }
    let mut buckets: BTreeMap<Permutation, Vec<(Word, Scalar)>> = BTreeMap::new();
    for (w, c) in p.terms() {
        let (rep, block_word) = gather_letters(w);
        buckets
            .entry(rep)
            .or_default()
            .push((block_word, c.clone()));
    }
    Ok(buckets
        .into_iter()
        .map(|(s, t)| (s, p.collect_like(t)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;

    fn sym(s: &str) -> FreePoly {
        parse_poly(s, Mode::Symmetric, None).unwrap()
    }

    fn brute_symmetrize(p: &FreePoly) -> FreePoly {
        let mut out = FreePoly::zero(p.g(), p.mode());
        for (d, comp) in p.components() {
            let all = Permutation::all(d);
            let n = Scalar::from_int(all.len() as i64);
            for s in &all {
                out = &out + &permute(s, &comp).unwrap().scale(&n.inv().unwrap());
            }
        }
        out
    }

    #[test]
    fn transposition_action() {
        let s = Permutation::parse("(1 4)", Some(4)).unwrap();
        let p = sym("x1 x2 x3 x4 + x1^4");
        assert_eq!(permute(&s, &p).unwrap(), sym("x4 x2 x3 x1 + x1^4"));
        assert!(permute(&s, &sym("x1 x2")).is_err());
    }

    #[test]
    fn symmetrization_examples() {
        assert_eq!(symmetrize(&sym("x1 x2 + x2 x1")), sym("x1 x2 + x2 x1"));
        let q = symmetrize(&sym("x1 x1 x2 x2"));
        let want = sym("1/6 (x1 x1 x2 x2 + x1 x2 x1 x2 + x2 x1 x1 x2 + x1 x2 x2 x1 + x2 x1 x2 x1 + x2 x2 x1 x1)");
        assert_eq!(q, want);
        let p = sym("x1^2 x2 x1 + 3 x2 x3 - x1 + 2");
        assert_eq!(symmetrize(&p), brute_symmetrize(&p));
        let pow = sym("(x1 + i x2)^3");
        assert_eq!(symmetrize(&pow), pow);
    }

    #[test]
    fn collapse_and_lift() {
        let c = comm_collapse(&sym("x1 x2 + x2 x1"));
        assert_eq!(c, CommPoly::monomial(vec![1, 1], Scalar::from_int(2)));
        let c = comm_collapse(&sym("x1^2 x2 x1 + x1 x2 x1^2 + x1 x2 - x2 x1 + 7"));
        let want = &CommPoly::monomial(vec![3, 1], Scalar::from_int(2))
            + &CommPoly::constant(2, Scalar::from_int(7));
        assert_eq!(c, want);
        let q = &CommPoly::monomial(vec![4, 0], Scalar::one())
            + &CommPoly::monomial(vec![2, 2], Scalar::from_int(6));
        let lifted = lift_symm(&q, Mode::Symmetric);
        let want = sym("x1^4 + x1 x1 x2 x2 + x1 x2 x1 x2 + x2 x1 x1 x2 + x1 x2 x2 x1 + x2 x1 x2 x1 + x2 x2 x1 x1");
        assert_eq!(lifted, want);
        assert_eq!(comm_collapse(&lifted), q);
    }

    #[test]
    fn independence() {
        let g = 3;
        let a = parse_poly("x1^2 - x2^2", Mode::Symmetric, Some(g)).unwrap();
        let b = parse_poly("x3", Mode::Symmetric, Some(g)).unwrap();
        assert!(is_independent_product(&[a.clone(), b]));
        assert!(!is_independent_product(&[a.clone(), a.clone()]));
        assert!(is_independent_product(&[a]));
    }

    #[test]
    fn neighbor_examples() {
        let p = sym("x1 x2 x1 + x2 x1^2");
        let split = neighbor_decompose(&p, 1, 2).unwrap();
        assert!(split.remainder.is_zero());
        let subsets: Vec<Vec<usize>> = split
            .pieces
            .iter()
            .map(|(s, _)| {
                let w = s.act(&Word::vars(&[1, 1, 2]));
                (1..=3).filter(|&k| w[k - 1].is_var(1)).collect()
            })
            .collect();
        assert_eq!(subsets, vec![vec![1, 3], vec![2, 3]]);
        for (_, q) in &split.pieces {
            assert_eq!(*q, parse_poly("x2", Mode::Symmetric, Some(2)).unwrap());
        }
        assert_eq!(split.reassemble(1, 2).unwrap(), p);

        let p = sym("x1 x2 + x2 x1");
        let split = neighbor_decompose(&p, 1, 1).unwrap();
        assert_eq!(split.pieces.len(), 2);
        assert!(split.pieces[0].0.is_identity());
        assert_eq!(split.reassemble(1, 1).unwrap(), p);

        let p = sym("x1^4");
        let split = neighbor_decompose(&p, 1, 4).unwrap();
        assert_eq!(
            split.pieces,
            vec![(Permutation::identity(4), FreePoly::one(1, Mode::Symmetric))]
        );
    }

    #[test]
    fn mod_split() {
        let p = sym("x1^3 + x1 x2 + x2");
        let s = mod_ell_split(&p, 1, 2);
        assert_eq!(s[0], parse_poly("x2", Mode::Symmetric, Some(2)).unwrap());
        assert_eq!(s[1], sym("x1^3 + x1 x2"));
        let s = mod_ell_split(&sym("x1^3 + x1^2"), 1, 3);
        assert_eq!(s[0], sym("x1^3"));
        assert!(s[1].is_zero());
        assert_eq!(s[2], sym("x1^2"));
    }

    #[test]
    fn coset_counts() {
        assert_eq!(coset_reps_pld(2, 2, 8).unwrap().len(), 3);
        assert_eq!(coset_reps_pld(1, 4, 8).unwrap().len(), 1);
        assert_eq!(coset_reps_pld(2, 1, 8).unwrap().len(), 1);
        assert_eq!(coset_reps_pld(2, 4, 8).unwrap().len(), 105);
        assert!(coset_reps_pld(3, 3, 8).is_err());
        assert_eq!(coset_reps_sdg(2, 3).unwrap().len(), 6);
        assert_eq!(coset_reps_sdg(3, 3).unwrap().len(), 6);
        assert_eq!(coset_reps_sdg(1, 2).unwrap().len(), 2);
        assert!(coset_reps_sdg(3, 2).is_err());
    }

    #[test]
    fn cosets_match_brute_force() {
        for (ell, d) in [(2, 2), (2, 3), (3, 2), (1, 3), (4, 2)] {
            let mut classes: BTreeMap<Vec<usize>, Permutation> = BTreeMap::new();
            for s in Permutation::all(ell * d) {
                let key: Vec<usize> = s.images().iter().map(|v| (v - 1) / ell).collect();
                // The class of s is fixed by which positions share a block; relabel
                // blocks by first appearance.
                let mut seen = Vec::new();
                let key: Vec<usize> = key
                    .iter()
                    .map(|b| match seen.iter().position(|x| x == b) {
                        Some(t) => t,
                        None => {
                            seen.push(*b);
                            seen.len() - 1
                        }
                    })
                    .collect();
                let e = classes.entry(key).or_insert_with(|| s.clone());
                if s < *e {
                    *e = s;
                }
            }
            let mut brute: Vec<Permutation> = classes.into_values().collect();
            brute.sort();
            assert_eq!(coset_reps_pld(ell, d, 8).unwrap(), brute, "ell={ell} d={d}");
        }
    }

    #[test]
    fn gather_round_trip() {
        let w = Word::vars(&[2, 1, 2, 3, 1]);
        let (s, u) = gather_letters(&w);
        assert_eq!(u, Word::vars(&[2, 2, 1, 1, 3]));
        assert_eq!(s.act(&u), w);
    }

    #[test]
    fn fully_split_examples() {
        let p = sym("x1^2 x2^2 - x2^2 x1^2");
        let s = fully_degree_ell_split(&p, 2).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].0.is_identity());
        assert_eq!(s[0].1, p);
        let s = fully_degree_ell_split(&sym("x1 x2 x1 x2"), 2).unwrap();
        assert_eq!(s[0].0.images(), vec![1, 3, 2, 4]);
        assert_eq!(s[0].1, sym("x1^2 x2^2"));
        assert!(matches!(
            fully_degree_ell_split(&sym("x1 x2^2"), 2),
            Err(Error::NotFullyDegree { .. })
        ));
        let s = fully_degree_ell_split(&sym("x1^2"), 2).unwrap();
        assert_eq!(s, vec![(Permutation::identity(2), sym("x1^2"))]);
    }
}
