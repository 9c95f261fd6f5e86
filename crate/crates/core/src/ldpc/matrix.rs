//! Sparse parity-check matrices and their Tanner-graph view.

use crate::bits::BitVector;
use crate::error::{Error, Result};

/// Quasi-cyclic structure: the matrix is an array of Z x Z circulants
/// described by a shift table (-1 marks the zero block, s >= 0 the
/// identity cyclically right-shifted by s).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QcInfo {
    pub base_rows: usize,
    pub base_cols: usize,
    pub z: usize,
    /// Row-major shift table, length base_rows * base_cols.
    pub shifts: Vec<i32>,
}

/// Sparse binary parity-check matrix with consistent row- and column-major
/// adjacency, optional quasi-cyclic structure and an optional ordered
/// layer partition of the rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityCheckMatrix {
    m: usize,
    n: usize,
    rows: Vec<Vec<u32>>,
    cols: Vec<Vec<u32>>,
    qc: Option<QcInfo>,
    layers: Option<Vec<Vec<u32>>>,
}

impl ParityCheckMatrix {
    /// Builds from per-row column lists; entries are sorted and checked.
    pub fn from_rows(m: usize, n: usize, row_lists: Vec<Vec<u32>>) -> Result<Self> {
        if row_lists.len() != m {
            return Err(Error::construction(format!(
                "expected {m} rows, got {}",
                row_lists.len()
            )));
        }
        let mut rows = row_lists;
        let mut cols: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (r, row) in rows.iter_mut().enumerate() {
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::construction(format!("repeated entry in row {r}")));
            }
            if let Some(&last) = row.last() {
                if last as usize >= n {
                    return Err(Error::construction(format!(
                        "row {r} references column {last} >= {n}"
                    )));
                }
            }
            for &c in row.iter() {
                cols[c as usize].push(r as u32);
            }
        }
        Ok(ParityCheckMatrix {
            m,
            n,
            rows,
            cols,
            qc: None,
            layers: None,
        })
    }

    pub fn with_qc(mut self, qc: QcInfo) -> Self {
        self.qc = Some(qc);
        self
    }

    pub fn with_layers(mut self, layers: Vec<Vec<u32>>) -> Self {
        self.layers = Some(layers);
        self
    }

    pub fn num_rows(&self) -> usize {
        self.m
    }

    pub fn num_cols(&self) -> usize {
        self.n
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.rows[r]
    }

    pub fn col(&self, c: usize) -> &[u32] {
        &self.cols[c]
    }

    pub fn qc(&self) -> Option<&QcInfo> {
        self.qc.as_ref()
    }

    pub fn num_edges(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// Ordered layer partition for layered decoding. Defaults to one layer
    /// per base-graph row for QC matrices and single-row layers otherwise.
    pub fn layers(&self) -> Vec<Vec<u32>> {
        if let Some(layers) = &self.layers {
            return layers.clone();
        }
        if let Some(qc) = &self.qc {
            return (0..qc.base_rows)
                .map(|br| ((br * qc.z) as u32..((br + 1) * qc.z) as u32).collect())
                .collect();
        }
        (0..self.m as u32).map(|r| vec![r]).collect()
    }

    /// H * word^T over GF(2).
    pub fn syndrome(&self, word: &BitVector) -> Result<BitVector> {
        if word.len() != self.n {
            return Err(Error::domain(format!(
                "word length {} does not match {} columns",
                word.len(),
                self.n
            )));
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().fold(0u8, |acc, &c| acc ^ word[c as usize]))
            .collect())
    }

    /// True iff the syndrome is all-zero.
    pub fn is_codeword(&self, word: &BitVector) -> bool {
        word.len() == self.n
            && self
                .rows
                .iter()
                .all(|row| row.iter().fold(0u8, |acc, &c| acc ^ word[c as usize]) == 0)
    }

    /// GF(2) rank by dense elimination over u64 words (intended for
    /// moderate sizes: structural checks, generator construction).
    pub fn rank(&self) -> usize {
        let words = self.n.div_ceil(64);
        let mut dense: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|row| {
                let mut w = vec![0u64; words];
                for &c in row {
                    w[c as usize / 64] |= 1 << (c % 64);
                }
                w
            })
            .collect();
        let mut rank = 0;
        for col in 0..self.n {
            let (wi, bi) = (col / 64, col % 64);
            if let Some(p) = (rank..self.m).find(|&r| (dense[r][wi] >> bi) & 1 == 1) {
                dense.swap(rank, p);
                let pivot = dense[rank].clone();
                for (r, drow) in dense.iter_mut().enumerate() {
                    if r != rank && (drow[wi] >> bi) & 1 == 1 {
                        for (a, b) in drow.iter_mut().zip(pivot.iter()) {
                            *a ^= b;
                        }
                    }
                }
                rank += 1;
                if rank == self.m {
                    break;
                }
            }
        }
        rank
    }

    /// Per-column and per-row degrees.
    pub fn col_degrees(&self) -> Vec<usize> {
        self.cols.iter().map(|c| c.len()).collect()
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.len()).collect()
    }
}

/// Flat edge-indexed Tanner graph for message passing. Edges are numbered
/// in check-node-major order.
#[derive(Debug, Clone)]
pub struct TannerGraph {
    pub n_checks: usize,
    pub n_vars: usize,
    pub n_edges: usize,
    /// Prefix offsets into `cn_vn` per check node (len n_checks + 1).
    pub cn_ptr: Vec<u32>,
    /// Variable index of each edge, check-major.
    pub cn_vn: Vec<u32>,
    /// Prefix offsets into `vn_edge` per variable node (len n_vars + 1).
    pub vn_ptr: Vec<u32>,
    /// Check-major edge ids grouped by variable node.
    pub vn_edge: Vec<u32>,
}

impl TannerGraph {
    pub fn from_matrix(h: &ParityCheckMatrix) -> Self {
        let m = h.num_rows();
        let n = h.num_cols();
        let mut cn_ptr = Vec::with_capacity(m + 1);
        let mut cn_vn = Vec::with_capacity(h.num_edges());
        cn_ptr.push(0u32);
        for r in 0..m {
            cn_vn.extend_from_slice(h.row(r));
            cn_ptr.push(cn_vn.len() as u32);
        }
        let mut vn_ptr = vec![0u32; n + 1];
        for &v in &cn_vn {
            vn_ptr[v as usize + 1] += 1;
        }
        for i in 0..n {
            vn_ptr[i + 1] += vn_ptr[i];
        }
        let mut fill = vn_ptr.clone();
        let mut vn_edge = vec![0u32; cn_vn.len()];
        for (e, &v) in cn_vn.iter().enumerate() {
            vn_edge[fill[v as usize] as usize] = e as u32;
            fill[v as usize] += 1;
        }
        TannerGraph {
            n_checks: m,
            n_vars: n,
            n_edges: cn_vn.len(),
            cn_ptr,
            cn_vn,
            vn_ptr,
            vn_edge,
        }
    }

    pub fn cn_degree(&self, c: usize) -> usize {
        (self.cn_ptr[c + 1] - self.cn_ptr[c]) as usize
    }

    pub fn vn_degree(&self, v: usize) -> usize {
        (self.vn_ptr[v + 1] - self.vn_ptr[v]) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{Rng, SeedSpec};

    /// The |0 1 1 0 1 0 1| Hamming(7,4) check matrix.
    pub(crate) fn hamming74() -> ParityCheckMatrix {
        ParityCheckMatrix::from_rows(
            3,
            7,
            vec![vec![0, 3, 4, 6], vec![1, 3, 5, 6], vec![2, 4, 5, 6]],
        )
        .unwrap()
    }

    #[test]
    fn adjacency_views_consistent() {
        let h = hamming74();
        assert_eq!(h.num_edges(), 12);
        for r in 0..3 {
            for &c in h.row(r) {
                assert!(h.col(c as usize).contains(&(r as u32)));
            }
        }
        assert_eq!(h.col_degrees(), vec![1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn syndrome_of_codeword_is_zero() {
        let h = hamming74();
        // 0000000 and 1101000-style codewords of Hamming(7,4).
        let zero = BitVector::zeros(7);
        assert!(h.is_codeword(&zero));
        let cw = BitVector::from_bits(vec![1, 1, 0, 1, 0, 0, 0]).unwrap();
        assert!(h.syndrome(&cw).unwrap().weight() == 0 || !h.is_codeword(&cw));
    }

    #[test]
    fn single_flip_yields_matching_column() {
        let h = hamming74();
        let zero = BitVector::zeros(7);
        for c in 0..7 {
            let mut w = zero.clone();
            w.set(c, 1);
            let syn = h.syndrome(&w).unwrap();
            let expect: Vec<u32> = (0..3)
                .filter(|&r| h.row(r).contains(&(c as u32)))
                .map(|r| r as u32)
                .collect();
            let got: Vec<u32> = syn
                .iter()
                .enumerate()
                .filter(|(_, &b)| b == 1)
                .map(|(r, _)| r as u32)
                .collect();
            assert_eq!(got, expect, "column {c}");
        }
    }

    #[test]
    fn syndrome_matches_dense_oracle() {
        let mut rng = Rng::from_seed(SeedSpec::new(41, 0));
        let h = hamming74();
        for _ in 0..200 {
            let w: BitVector = (0..7).map(|_| rng.next_u64() as u8 & 1).collect();
            let syn = h.syndrome(&w).unwrap();
            // Dense multiply oracle.
            let mut dense = vec![vec![0u8; 7]; 3];
            for r in 0..3 {
                for &c in h.row(r) {
                    dense[r][c as usize] = 1;
                }
            }
            for r in 0..3 {
                let bit = (0..7).map(|c| dense[r][c] & w[c]).fold(0, |a, b| a ^ b);
                assert_eq!(syn[r], bit);
            }
        }
    }

    #[test]
    fn rank_of_hamming_is_three() {
        assert_eq!(hamming74().rank(), 3);
    }

    #[test]
    fn tanner_graph_is_bipartite_consistent() {
        let h = hamming74();
        let g = TannerGraph::from_matrix(&h);
        assert_eq!(g.n_edges, 12);
        // Every VN-major edge id points back at the right variable.
        for v in 0..g.n_vars {
            for i in g.vn_ptr[v]..g.vn_ptr[v + 1] {
                let e = g.vn_edge[i as usize] as usize;
                assert_eq!(g.cn_vn[e] as usize, v);
            }
        }
        // Degrees match the matrix.
        for r in 0..3 {
            assert_eq!(g.cn_degree(r), h.row(r).len());
        }
    }

    #[test]
    fn default_layers_are_single_rows() {
        let h = hamming74();
        assert_eq!(h.layers(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(ParityCheckMatrix::from_rows(1, 4, vec![vec![0, 0]]).is_err());
        assert!(ParityCheckMatrix::from_rows(1, 4, vec![vec![4]]).is_err());
        assert!(ParityCheckMatrix::from_rows(2, 4, vec![vec![0]]).is_err());
    }
}
