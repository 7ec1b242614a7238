//! Polycyclic presentations and collection from the left.
//!
//! A presentation has generators `x_1, ..., x_k` with relative orders
//! `r_i >= 2`, power relations `x_i^{r_i} = w_i` (a word in higher
//! generators) and conjugation relations `x_i^{x_j} = w_ij` for `j < i`
//! (also a word in generators `> j`).  Missing conjugation relations mean
//! the generators commute.  Every element has a unique normal word
//! `x_1^{a_1} ... x_k^{a_k}` with `0 <= a_i < r_i`; `collect` rewrites an
//! arbitrary word to this form.

use serde::{Deserialize, Serialize};

/// A word as `(generator index, exponent)` letters, 0-based generators.
pub type Letter = (usize, i64);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
pub enum PcError {
    #[error("collection exceeded the step budget of {budget} (inconsistent presentation?)")]
    NonTerminating { budget: usize },
    #[error("invalid presentation: {0}")]
    Invalid(String),
    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),
    #[error("invalid word: {0}")]
    BadWord(String),
}

pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct PcPresentation {
    orders: Vec<u32>,
    /// `power_words[i]`: the normal word equal to `x_i^{r_i}` (letters with
    /// positive exponents in generators `> i`).
    power_words: Vec<Vec<(usize, u32)>>,
    /// `conj_words[i][j]` for `j < i`: the word equal to `x_i^{x_j}`;
    /// `None` means `x_i` and `x_j` commute.
    conj_words: Vec<Vec<Option<Vec<(usize, u32)>>>>,
    /// Normal form of `x_i^{-1}`, for eliminating negative exponents.
    inv_normals: Vec<Vec<u32>>,
    /// Mixed-radix strides: element index = sum a_i * strides[i].
    strides: Vec<usize>,
    order: usize,
    step_budget: usize,
}

impl PcPresentation {
    /// Builds a presentation from relative orders, power relation words and
    /// conjugation relation words keyed by `(i, j)` with `j < i` (0-based).
    pub fn new(
        orders: Vec<u32>,
        powers: Vec<Vec<Letter>>,
        conjugates: Vec<((usize, usize), Vec<Letter>)>,
        step_budget: usize,
    ) -> Result<Self, PcError> {
        let k = orders.len();
        if k == 0 {
            return Err(PcError::Invalid("presentation needs at least one generator".into()));
        }
        if orders.iter().any(|&r| r < 2) {
            return Err(PcError::Invalid("relative orders must be at least 2".into()));
        }
        if powers.len() != k {
            return Err(PcError::Invalid(format!("expected {k} power relations, got {}", powers.len())));
        }
        let mut order: usize = 1;
        for &r in &orders {
            order = order
                .checked_mul(r as usize)
                .filter(|&n| n <= 1 << 24)
                .ok_or_else(|| PcError::Invalid("group order too large".into()))?;
        }
        let mut strides = vec![1usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1] as usize;
        }

        let check_word = |w: &[Letter], min_gen: usize, what: &str| -> Result<Vec<(usize, u32)>, PcError> {
            let mut out = Vec::with_capacity(w.len());
            for &(g, e) in w {
                if g >= k {
                    return Err(PcError::Invalid(format!("{what}: generator x{} out of range", g + 1)));
                }
                if g < min_gen {
                    return Err(PcError::Invalid(format!(
                        "{what}: generator x{} too low (must involve only generators above x{})",
                        g + 1,
                        min_gen
                    )));
                }
                if e < 0 {
                    return Err(PcError::Invalid(format!("{what}: negative exponent in relation")));
                }
                if e > 0 {
                    out.push((g, e as u32));
                }
            }
            Ok(out)
        };

        let mut power_words = Vec::with_capacity(k);
        for (i, w) in powers.iter().enumerate() {
            power_words.push(check_word(w, i + 1, &format!("power relation for x{}", i + 1))?);
        }
        let mut conj_words: Vec<Vec<Option<Vec<(usize, u32)>>>> = (0..k).map(|i| vec![None; i]).collect();
        for ((i, j), w) in conjugates {
            if i >= k || j >= i {
                return Err(PcError::Invalid(format!(
                    "conjugation relation ({}, {}) must have k >= i > j >= 1",
                    i + 1,
                    j + 1
                )));
            }
            if conj_words[i][j].is_some() {
                return Err(PcError::Invalid(format!("duplicate conjugation relation for ({}, {})", i + 1, j + 1)));
            }
            conj_words[i][j] = Some(check_word(&w, j + 1, &format!("conjugate of x{} by x{}", i + 1, j + 1))?);
        }

        let mut pres = PcPresentation {
            orders,
            power_words,
            conj_words,
            inv_normals: Vec::new(),
            strides,
            order,
            step_budget,
        };
        pres.build_inverse_normals()?;
        Ok(pres)
    }

    /// Derives conjugation relations from commutator relations
    /// `[x_i, x_j] = w` via `x_i^{x_j} = x_i * [x_i, x_j]`.
    pub fn commutator_to_conjugate(i: usize, word: &[Letter]) -> Vec<Letter> {
        let mut out = vec![(i, 1i64)];
        out.extend_from_slice(word);
        out
    }

    pub fn num_generators(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self, normal: &[u32]) -> usize {
        normal.iter().zip(&self.strides).map(|(&a, &s)| a as usize * s).sum()
    }

    pub fn unrank(&self, mut index: usize) -> Vec<u32> {
        let mut out = vec![0u32; self.orders.len()];
        for i in 0..self.orders.len() {
            out[i] = (index / self.strides[i]) as u32;
            index %= self.strides[i];
        }
        out
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    fn push_word(stack: &mut Vec<(usize, u32)>, word: &[(usize, u32)]) {
        for &(g, e) in word.iter().rev() {
            if e > 0 {
                stack.push((g, e));
            }
        }
    }

    /// Collection from the left, starting from an already-normal prefix.
    fn collect_onto(&self, normal: &mut [u32], letters: &[(usize, u32)]) -> Result<(), PcError> {
        let k = self.orders.len();
        let mut stack: Vec<(usize, u32)> = Vec::with_capacity(letters.len() + 8);
        Self::push_word(&mut stack, letters);
        let mut steps = 0usize;
        while let Some(&(j, _)) = stack.last() {
            steps += 1;
            if steps > self.step_budget {
                return Err(PcError::NonTerminating { budget: self.step_budget });
            }
            {
                let top = stack.last_mut().unwrap();
                top.1 -= 1;
                if top.1 == 0 {
                    stack.pop();
                }
            }
            // Move one x_j onto the prefix x_1^{a_1}..x_k^{a_k}.
            let tail_nonzero = (j + 1..k).any(|i| normal[i] != 0);
            if !tail_nonzero {
                normal[j] += 1;
                if normal[j] == self.orders[j] {
                    normal[j] = 0;
                    Self::push_word(&mut stack, &self.power_words[j]);
                }
            } else {
                // prefix = P x_j^{a_j} S with S in generators > j:
                // P x_j^{a_j} S x_j = P x_j^{a_j+1} S^{x_j}; the suffix is
                // re-collected after any power-relation overflow word.
                let suffix: Vec<(usize, u32)> =
                    (j + 1..k).filter(|&i| normal[i] != 0).map(|i| (i, normal[i])).collect();
                for i in j + 1..k {
                    normal[i] = 0;
                }
                normal[j] += 1;
                let overflow = normal[j] == self.orders[j];
                if overflow {
                    normal[j] = 0;
                }
                for &(i, e) in suffix.iter().rev() {
                    match &self.conj_words[i][j] {
                        None => stack.push((i, e)),
                        Some(w) => {
                            for _ in 0..e {
                                Self::push_word(&mut stack, w);
                            }
                        }
                    }
                }
                if overflow {
                    Self::push_word(&mut stack, &self.power_words[j]);
                }
            }
        }
        Ok(())
    }

    /// Normal form of an arbitrary word (negative exponents allowed).
    pub fn collect(&self, word: &[Letter]) -> Result<Vec<u32>, PcError> {
        let positive = self.eliminate_negatives(word)?;
        let mut normal = vec![0u32; self.orders.len()];
        self.collect_onto(&mut normal, &positive)?;
        Ok(normal)
    }

    /// Product of two normal words.
    pub fn multiply(&self, a: &[u32], b: &[u32]) -> Result<Vec<u32>, PcError> {
        let mut normal = a.to_vec();
        let letters: Vec<(usize, u32)> =
            b.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| (i, e)).collect();
        self.collect_onto(&mut normal, &letters)?;
        Ok(normal)
    }

    /// Product of a normal word with a single generator.
    pub fn multiply_by_generator(&self, a: &[u32], gen: usize) -> Result<Vec<u32>, PcError> {
        let mut normal = a.to_vec();
        self.collect_onto(&mut normal, &[(gen, 1)])?;
        Ok(normal)
    }

    fn eliminate_negatives(&self, word: &[Letter]) -> Result<Vec<(usize, u32)>, PcError> {
        let k = self.orders.len();
        let mut out = Vec::with_capacity(word.len());
        for &(g, e) in word {
            if g >= k {
                return Err(PcError::BadWord(format!("generator x{} out of range", g + 1)));
            }
            if e >= 0 {
                if e > 0 {
                    out.push((g, e as u32));
                }
            } else {
                let inv = &self.inv_normals[g];
                for _ in 0..(-e) as u64 {
                    out.extend(inv.iter().enumerate().filter(|(_, &a)| a != 0).map(|(i, &a)| (i, a)));
                }
            }
        }
        Ok(out)
    }

    /// Computes the normal form of each `x_i^{-1}` bottom-up; the power word
    /// of the last generator must be empty, then each lower inverse only
    /// involves higher ones.
    fn build_inverse_normals(&mut self) -> Result<(), PcError> {
        let k = self.orders.len();
        let mut inv_normals: Vec<Vec<u32>> = vec![Vec::new(); k];
        for i in (0..k).rev() {
            // x_i^{-1} = x_i^{r_i - 1} * (x_i^{r_i})^{-1}
            let mut letters: Vec<(usize, u32)> = Vec::new();
            if self.orders[i] > 1 {
                letters.push((i, self.orders[i] - 1));
            }
            for &(g, e) in self.power_words[i].iter().rev() {
                if g <= i {
                    return Err(PcError::Invalid("power relation involves the generator itself".into()));
                }
                let inv = &inv_normals[g];
                for _ in 0..e {
                    letters.extend(inv.iter().enumerate().filter(|(_, &a)| a != 0).map(|(j2, &a)| (j2, a)));
                }
            }
            let mut normal = vec![0u32; k];
            self.collect_onto(&mut normal, &letters)?;
            inv_normals[i] = normal;
        }
        self.inv_normals = inv_normals;
        // Sanity: x_i * x_i^{-1} collects to the identity.
        for i in 0..k {
            let mut normal = vec![0u32; k];
            let mut letters = vec![(i, 1u32)];
            letters.extend(self.inv_normals[i].iter().enumerate().filter(|(_, &a)| a != 0).map(|(j, &a)| (j, a)));
            self.collect_onto(&mut normal, &letters)?;
            if normal.iter().any(|&a| a != 0) {
                return Err(PcError::Inconsistent(format!("x{}^-1 is not a right inverse", i + 1)));
            }
        }
        Ok(())
    }

    /// The polycyclic consistency (overlap) checks; a presentation passing
    /// these defines a group of order `prod r_i`.
    pub fn consistency_check(&self) -> Result<(), PcError> {
        let k = self.orders.len();
        let nf = |letters: &[(usize, u32)]| -> Result<Vec<u32>, PcError> {
            let mut normal = vec![0u32; k];
            self.collect_onto(&mut normal, letters)?;
            Ok(normal)
        };
        let to_letters = |normal: &[u32]| -> Vec<(usize, u32)> {
            normal.iter().enumerate().filter(|(_, &a)| a != 0).map(|(i, &a)| (i, a)).collect()
        };
        // Associativity overlaps x_h (x_j x_i) = (x_h x_j) x_i for h > j > i.
        for h in 0..k {
            for j in 0..h {
                for i in 0..j {
                    let rhs_inner = nf(&[(h, 1), (j, 1)])?;
                    let mut rhs_letters = to_letters(&rhs_inner);
                    rhs_letters.push((i, 1));
                    let rhs = nf(&rhs_letters)?;
                    let lhs_inner = nf(&[(j, 1), (i, 1)])?;
                    let mut lhs_letters = vec![(h, 1)];
                    lhs_letters.extend(to_letters(&lhs_inner));
                    let lhs = nf(&lhs_letters)?;
                    if lhs != rhs {
                        return Err(PcError::Inconsistent(format!(
                            "overlap x{}(x{}x{}) != (x{}x{})x{}",
                            h + 1, j + 1, i + 1, h + 1, j + 1, i + 1
                        )));
                    }
                }
            }
        }
        // Power overlaps: one side substitutes the power relation word.
        for j in 0..k {
            for i in 0..j {
                // (x_j^{r_j}) x_i = x_j^{r_j - 1} (x_j x_i)
                let mut ll = self.power_words[j].clone();
                ll.push((i, 1));
                let lhs = nf(&ll)?;
                let inner = nf(&[(j, 1), (i, 1)])?;
                let mut rl = vec![(j, self.orders[j] - 1)];
                rl.extend(to_letters(&inner));
                let rhs = nf(&rl)?;
                if lhs != rhs {
                    return Err(PcError::Inconsistent(format!("power overlap at x{}^r x{}", j + 1, i + 1)));
                }
                // x_j (x_i^{r_i}) = (x_j x_i) x_i^{r_i - 1}
                let mut ll = vec![(j, 1)];
                ll.extend(self.power_words[i].iter().copied());
                let lhs = nf(&ll)?;
                let mut rl = to_letters(&nf(&[(j, 1), (i, 1)])?);
                rl.push((i, self.orders[i] - 1));
                let rhs = nf(&rl)?;
                if lhs != rhs {
                    return Err(PcError::Inconsistent(format!("power overlap at x{} x{}^r", j + 1, i + 1)));
                }
            }
            // x_j (x_j^{r_j}) = (x_j^{r_j}) x_j
            let mut ll = vec![(j, 1)];
            ll.extend(self.power_words[j].iter().copied());
            let lhs = nf(&ll)?;
            let mut rl = self.power_words[j].clone();
            rl.push((j, 1));
            let rhs = nf(&rl)?;
            if lhs != rhs {
                return Err(PcError::Inconsistent(format!("power overlap at x{}^(r+1)", j + 1)));
            }
        }
        Ok(())
    }

    /// Display string for a normal word, e.g. `x1*x4^2`; identity is `e`.
    pub fn word_name(&self, normal: &[u32]) -> String {
        let parts: Vec<String> = normal
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(i, &a)| if a == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, a) })
            .collect();
        if parts.is_empty() {
            "e".to_string()
        } else {
            parts.join("*")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The order-1000 presentation from the bundled example group: orders
    /// (2,2,2,5,5,5) with x1^2 = x2, x2^2 = x3 and nontrivial commutators.
    pub(crate) fn g1000() -> PcPresentation {
        let commutators: Vec<((usize, usize), Vec<Letter>)> = vec![
            ((4, 3), vec![(5, 1)]),                   // [x5,x4] = x6
            ((4, 0), vec![(3, 1), (4, 1)]),           // [x5,x1] = x4 x5
            ((5, 0), vec![(5, 2)]),                   // [x6,x1] = x6^2
            ((3, 1), vec![(3, 1), (5, 2)]),           // [x4,x2] = x4 x6^2
            ((5, 1), vec![(5, 3)]),                   // [x6,x2] = x6^3
            ((4, 1), vec![(4, 1), (5, 2)]),           // [x5,x2] = x5 x6^2
            ((4, 2), vec![(4, 3), (5, 2)]),           // [x5,x3] = x5^3 x6^2
            ((3, 2), vec![(3, 3), (5, 2)]),           // [x4,x3] = x4^3 x6^2
            ((3, 0), vec![(3, 2), (4, 3), (5, 4)]),   // [x4,x1] = x4^2 x5^3 x6^4
        ];
        let conjugates = commutators
            .into_iter()
            .map(|((i, j), w)| ((i, j), PcPresentation::commutator_to_conjugate(i, &w)))
            .collect();
        PcPresentation::new(
            vec![2, 2, 2, 5, 5, 5],
            vec![vec![(1, 1)], vec![(2, 1)], vec![], vec![], vec![], vec![]],
            conjugates,
            DEFAULT_STEP_BUDGET,
        )
        .unwrap()
    }

    #[test]
    fn collect_x5_x4() {
        let p = g1000();
        // x5 x4 = x4 x5 x6 (from [x5,x4] = x6).
        let nf = p.collect(&[(4, 1), (3, 1)]).unwrap();
        assert_eq!(nf, vec![0, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn collect_x1_squared() {
        let p = g1000();
        let nf = p.collect(&[(0, 2)]).unwrap();
        assert_eq!(nf, vec![0, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn collect_empty_word() {
        let p = g1000();
        assert_eq!(p.collect(&[]).unwrap(), vec![0; 6]);
    }

    #[test]
    fn collect_is_homomorphic() {
        let p = g1000();
        // collect(u v) = collect(collect(u) collect(v)) on a few words.
        let u: Vec<Letter> = vec![(0, 1), (4, 2), (3, 1)];
        let v: Vec<Letter> = vec![(2, 1), (5, 3), (0, 1)];
        let mut uv = u.clone();
        uv.extend_from_slice(&v);
        let lhs = p.collect(&uv).unwrap();
        let nu = p.collect(&u).unwrap();
        let nv = p.collect(&v).unwrap();
        let rhs = p.multiply(&nu, &nv).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn negative_exponents() {
        let p = g1000();
        // x4^{-1} x4 = e
        assert_eq!(p.collect(&[(3, -1), (3, 1)]).unwrap(), vec![0; 6]);
        // x1^{-1} = x1 x2^{-1} ... just check the defining identity.
        assert_eq!(p.collect(&[(0, -1), (0, 1)]).unwrap(), vec![0; 6]);
        assert_eq!(p.collect(&[(0, 1), (0, -1)]).unwrap(), vec![0; 6]);
    }

    #[test]
    fn consistency_of_g1000() {
        let p = g1000();
        p.consistency_check().unwrap();
        assert_eq!(p.order(), 1000);
    }

    #[test]
    fn inconsistent_presentation_detected() {
        // Orders (2,2) with x2^{x1} = x2^2 = 1 pretends conjugation by x1
        // kills x2; the power overlap x2 * x1^2 exposes it.
        let p = PcPresentation::new(
            vec![2, 2],
            vec![vec![], vec![]],
            vec![((1, 0), vec![(1, 2)])],
            DEFAULT_STEP_BUDGET,
        )
        .unwrap();
        assert!(p.consistency_check().is_err());
    }

    #[test]
    fn word_names() {
        let p = g1000();
        assert_eq!(p.word_name(&[0, 0, 0, 0, 0, 0]), "e");
        assert_eq!(p.word_name(&[0, 0, 1, 2, 0, 0]), "x3*x4^2");
    }
}
