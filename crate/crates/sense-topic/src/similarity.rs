//! Gloss-overlap similarity between synsets and the document-local sparse
//! precision matrix built from it.
//!
//! The precision matrix encodes synset correlations: off-diagonal `(i, j)` is
//! the negated, scaled similarity of synsets `i` and `j`, and the diagonal is
//! padded to strict diagonal dominance, which guarantees positive
//! definiteness.

use std::collections::HashMap;
use std::io::Write;

use crate::error::{Error, Result};
use crate::wordnet::{KnowledgeBase, SynsetId};

/// Fixed stopword list applied to gloss tokens. Version-controlled: changing
/// it changes similarity scores everywhere.
pub const STOPWORDS: [&str; 72] = [
    "a", "an", "the", "this", "that", "these", "those", "it", "its", "is", "are", "was", "were",
    "be", "been", "being", "of", "in", "on", "at", "by", "for", "with", "to", "from", "as", "and",
    "or", "not", "no", "nor", "while", "he", "she", "they", "them", "their", "his", "her", "who",
    "whom", "which", "what", "when", "where", "how", "all", "any", "both", "each", "some", "such",
    "than", "too", "very", "can", "will", "just", "do", "does", "did", "have", "has", "had", "i",
    "you", "we", "me", "him", "us", "so", "if",
];

fn is_stopword(token: &str) -> bool {
    STOPWORDS.contains(&token)
}

/// Tokenize gloss or context text: lowercase, split on non-alphanumeric
/// characters, drop stopwords. The returned multiset is sorted.
pub fn overlap_tokens(text: &str) -> Vec<String> {
    let lower = text.to_lowercase();
    let mut tokens: Vec<String> = lower
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty() && !is_stopword(t))
        .map(str::to_string)
        .collect();
    tokens.sort_unstable();
    tokens
}

/// Size of the multiset intersection of two sorted token lists.
fn multiset_overlap(a: &[String], b: &[String]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Pluggable synset-to-synset similarity in `[0, 1]`.
///
/// Implementations must be symmetric in their arguments. The provided
/// [`build_matrix`](SynsetSimilarity::build_matrix) assembles a precision
/// matrix by evaluating every unordered pair; implementations with more
/// structure may override it.
pub trait SynsetSimilarity {
    fn similarity(&self, kb: &KnowledgeBase, a: SynsetId, b: SynsetId) -> Result<f64>;

    fn build_matrix(
        &self,
        kb: &KnowledgeBase,
        synsets: &[SynsetId],
        lambda: f64,
        delta: f64,
    ) -> Result<PrecisionMatrix> {
        check_matrix_args(synsets, lambda, delta)?;
        let mut pairs = Vec::new();
        for i in 0..synsets.len() {
            for j in (i + 1)..synsets.len() {
                let s = self.similarity(kb, synsets[i], synsets[j])?;
                if s > 0.0 {
                    pairs.push((i as u32, j as u32, s));
                }
            }
        }
        Ok(PrecisionMatrix::from_similarities(
            synsets.to_vec(),
            &pairs,
            lambda,
            delta,
        ))
    }
}

/// Gloss-overlap (Lesk) similarity: the multiset intersection of the two
/// glosses' content tokens, normalized by the larger token count.
#[derive(Debug, Clone, Copy, Default)]
pub struct LeskSimilarity {
    /// Include quoted example sentences in the compared text. Off by
    /// default: only the definition portion of the gloss is compared.
    pub include_examples: bool,
}

impl LeskSimilarity {
    fn tokens(&self, kb: &KnowledgeBase, id: SynsetId) -> Result<Vec<String>> {
        let synset = kb.synset(id)?;
        let text = if self.include_examples {
            synset.gloss.clone()
        } else {
            synset.definition()
        };
        Ok(overlap_tokens(&text))
    }

    fn score(a: &[String], b: &[String]) -> f64 {
        let denom = a.len().max(b.len());
        if denom == 0 {
            return 0.0;
        }
        multiset_overlap(a, b) as f64 / denom as f64
    }
}

impl SynsetSimilarity for LeskSimilarity {
    fn similarity(&self, kb: &KnowledgeBase, a: SynsetId, b: SynsetId) -> Result<f64> {
        if a == b {
            kb.synset(a)?;
            return Ok(1.0);
        }
        let ta = self.tokens(kb, a)?;
        let tb = self.tokens(kb, b)?;
        Ok(Self::score(&ta, &tb))
    }

    /// Inverted-index assembly: only synset pairs sharing at least one gloss
    /// token can have nonzero overlap, so pair counts are accumulated per
    /// shared token instead of over all `n(n-1)/2` pairs. Gloss token
    /// multisets are computed once per synset.
    fn build_matrix(
        &self,
        kb: &KnowledgeBase,
        synsets: &[SynsetId],
        lambda: f64,
        delta: f64,
    ) -> Result<PrecisionMatrix> {
        check_matrix_args(synsets, lambda, delta)?;
        let token_lists: Vec<Vec<String>> = synsets
            .iter()
            .map(|&id| self.tokens(kb, id))
            .collect::<Result<_>>()?;
        // token -> list of (synset index, multiplicity)
        let mut postings: HashMap<&str, Vec<(u32, u32)>> = HashMap::new();
        for (idx, tokens) in token_lists.iter().enumerate() {
            let mut k = 0;
            while k < tokens.len() {
                let mut mult = 1;
                while k + mult < tokens.len() && tokens[k + mult] == tokens[k] {
                    mult += 1;
                }
                postings
                    .entry(tokens[k].as_str())
                    .or_default()
                    .push((idx as u32, mult as u32));
                k += mult;
            }
        }
        // Accumulate multiset intersections per unordered pair.
        let mut inter: HashMap<(u32, u32), u32> = HashMap::new();
        for entries in postings.values() {
            if entries.len() < 2 {
                continue;
            }
            for i in 0..entries.len() {
                for j in (i + 1)..entries.len() {
                    let (ia, ma) = entries[i];
                    let (ib, mb) = entries[j];
                    *inter.entry((ia, ib)).or_insert(0) += ma.min(mb);
                }
            }
        }
        let mut pairs: Vec<(u32, u32, f64)> = inter
            .into_iter()
            .map(|((i, j), n)| {
                let denom = token_lists[i as usize].len().max(token_lists[j as usize].len());
                (i, j, n as f64 / denom as f64)
            })
            .collect();
        pairs.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        Ok(PrecisionMatrix::from_similarities(
            synsets.to_vec(),
            &pairs,
            lambda,
            delta,
        ))
    }
}

/// Gloss-overlap similarity of two synsets with the default tokenizer.
/// Identical synsets score 1 regardless of gloss content.
pub fn lesk_similarity(kb: &KnowledgeBase, a: SynsetId, b: SynsetId) -> Result<f64> {
    LeskSimilarity::default().similarity(kb, a, b)
}

fn check_matrix_args(synsets: &[SynsetId], lambda: f64, delta: f64) -> Result<()> {
    if synsets.is_empty() {
        return Err(Error::InvalidArgument("empty synset subset".into()));
    }
    if !(lambda > 0.0) || !(delta > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "lambda and delta must be positive, got {lambda} and {delta}"
        )));
    }
    let mut seen = std::collections::HashSet::with_capacity(synsets.len());
    for id in synsets {
        if !seen.insert(*id) {
            return Err(Error::InvalidArgument(format!(
                "duplicate synset {id} in precision-matrix subset"
            )));
        }
    }
    Ok(())
}

/// Build the precision matrix over a document-local synset subset using
/// gloss-overlap similarity: off-diagonal `(i, j) = -lambda * similarity`,
/// diagonal `delta` plus the row's absolute off-diagonal sum.
pub fn build_precision_matrix(
    kb: &KnowledgeBase,
    synsets: &[SynsetId],
    lambda: f64,
    delta: f64,
) -> Result<PrecisionMatrix> {
    LeskSimilarity::default().build_matrix(kb, synsets, lambda, delta)
}

/// Sparse symmetric positive-definite precision matrix over an ordered
/// document-local synset subset. Off-diagonal entries with zero similarity
/// are not stored.
#[derive(Debug, Clone)]
pub struct PrecisionMatrix {
    synset_ids: Vec<SynsetId>,
    diag: Vec<f64>,
    row_ptr: Vec<usize>,
    col_idx: Vec<u32>,
    values: Vec<f64>,
}

impl PrecisionMatrix {
    /// Assemble from strictly-upper-triangular similarity pairs
    /// `(i, j, similarity)` with `i < j` and positive similarity.
    pub fn from_similarities(
        synset_ids: Vec<SynsetId>,
        pairs: &[(u32, u32, f64)],
        lambda: f64,
        delta: f64,
    ) -> PrecisionMatrix {
        let dim = synset_ids.len();
        let mut diag = vec![delta; dim];
        let mut rows: Vec<Vec<(u32, f64)>> = vec![Vec::new(); dim];
        for &(i, j, sim) in pairs {
            debug_assert!(i < j && (j as usize) < dim && sim > 0.0);
            let value = -lambda * sim;
            rows[i as usize].push((j, value));
            rows[j as usize].push((i, value));
            diag[i as usize] += value.abs();
            diag[j as usize] += value.abs();
        }
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for row in &mut rows {
            row.sort_unstable_by_key(|&(c, _)| c);
            for &(c, v) in row.iter() {
                col_idx.push(c);
                values.push(v);
            }
            row_ptr.push(col_idx.len());
        }
        PrecisionMatrix {
            synset_ids,
            diag,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn synset_ids(&self) -> &[SynsetId] {
        &self.synset_ids
    }

    /// Number of stored off-diagonal entries (both triangles).
    pub fn offdiag_nnz(&self) -> usize {
        self.values.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return self.diag[i];
        }
        let row = &self.col_idx[self.row_ptr[i]..self.row_ptr[i + 1]];
        match row.binary_search(&(j as u32)) {
            Ok(k) => self.values[self.row_ptr[i] + k],
            Err(_) => 0.0,
        }
    }

    /// `out = M x`.
    pub fn mul_vec(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim());
        debug_assert_eq!(out.len(), self.dim());
        for i in 0..self.dim() {
            let mut acc = self.diag[i] * x[i];
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.values[k] * x[self.col_idx[k] as usize];
            }
            out[i] = acc;
        }
    }

    /// `x^T M x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim() {
            let mut row = self.diag[i] * x[i];
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                row += self.values[k] * x[self.col_idx[k] as usize];
            }
            acc += row * x[i];
        }
        acc
    }

    /// Dense lower-triangular Cholesky factor, or `None` when the matrix is
    /// not positive definite. Intended for validation and tests; inference
    /// never factorizes.
    pub fn cholesky_dense(&self) -> Option<Vec<f64>> {
        let n = self.dim();
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            a[i * n + i] = self.diag[i];
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                a[i * n + self.col_idx[k] as usize] = self.values[k];
            }
        }
        let mut l = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut sum = a[i * n + j];
                for k in 0..j {
                    sum -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if sum <= 0.0 {
                        return None;
                    }
                    l[i * n + j] = sum.sqrt();
                } else {
                    l[i * n + j] = sum / l[j * n + j];
                }
            }
        }
        Some(l)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.cholesky_dense().is_some()
    }

    /// Export as a textual sparse-triplet listing: a header with the synset
    /// ids, then `i j value` lines (0-based, upper triangle plus diagonal).
    pub fn write_triplets<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        write!(w, "# precision matrix dim={}", self.dim())?;
        writeln!(w)?;
        write!(w, "# synsets:")?;
        for id in &self.synset_ids {
            write!(w, " {id}")?;
        }
        writeln!(w)?;
        for i in 0..self.dim() {
            writeln!(w, "{} {} {}", i, i, self.diag[i])?;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                let j = self.col_idx[k] as usize;
                if j > i {
                    writeln!(w, "{} {} {}", i, j, self.values[k])?;
                }
            }
        }
        Ok(())
    }
}
