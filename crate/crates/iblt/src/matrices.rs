//! Mapping matrices as deterministic column generators.
//!
//! Every scheme maps element j to the support of column j of an m-by-n
//! matrix: binary matrices for the counter-based families, GF(2^r)
//! matrices (BCH parity checks and B_d-sequence blocks) for the general
//! family. Columns are generated on demand so large universes never
//! materialize the matrix.

use crate::error::Error;
use crate::field::Field;

/// Construction identifiers, matching the id strings used in config files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    Example2,
    AllColsPlusOnes,
    ConstWtPlusOnes,
    BchBinPlusOnes,
    BchGf,
    BdDiag,
    H2,
    H2Hat,
    Custom,
}

impl Construction {
    pub fn id(self) -> &'static str {
        match self {
            Construction::Example2 => "example2",
            Construction::AllColsPlusOnes => "all-cols+1",
            Construction::ConstWtPlusOnes => "const-wt+1",
            Construction::BchBinPlusOnes => "bch-bin+1",
            Construction::BchGf => "bch-gf",
            Construction::BdDiag => "bd-diag",
            Construction::H2 => "h2",
            Construction::H2Hat => "h2hat",
            Construction::Custom => "custom",
        }
    }

    pub fn parse(s: &str) -> Option<Construction> {
        Some(match s {
            "example2" => Construction::Example2,
            "all-cols+1" => Construction::AllColsPlusOnes,
            "const-wt+1" => Construction::ConstWtPlusOnes,
            "bch-bin+1" => Construction::BchBinPlusOnes,
            "bch-gf" => Construction::BchGf,
            "bd-diag" => Construction::BdDiag,
            "h2" => Construction::H2,
            "h2hat" => Construction::H2Hat,
            _ => return None,
        })
    }
}

/// The fixed 5x6 matrix used as the running worked example.
const EXAMPLE2_SUPPORTS: [[usize; 2]; 6] = [[0, 2], [0, 3], [0, 4], [1, 2], [1, 3], [1, 4]];

#[derive(Debug, Clone)]
enum Kind {
    Example2,
    AllColsPlusOnes {
        r: u32,
    },
    ConstWtPlusOnes {
        k: u32,
    },
    BchBinPlusOnes {
        field: Field,
    },
    BchGf {
        field: Field,
        d: u32,
    },
    /// Diagonal blocks of a weight-1 row vector; `block` is the nonzero
    /// part g_1..g_l of a B_d-sequence.
    BdDiag {
        field: Field,
        block: Vec<u64>,
    },
    /// Staircase of upper/lower half-column vectors, one block per row pair.
    H2 {
        field: Field,
        gu: Vec<u64>,
        gl: Vec<u64>,
    },
    /// Three-row tile of half-column vectors, tiled with one shared row.
    H2Hat {
        field: Field,
        gu: Vec<u64>,
        gl: Vec<u64>,
    },
    Custom {
        supports: Vec<Vec<usize>>,
    },
    Padded {
        inner: Box<Mapping>,
        constants: Vec<u64>,
    },
}

/// A column-generator view of a mapping matrix.
#[derive(Debug, Clone)]
pub struct Mapping {
    m: usize,
    n: u64,
    construction: Construction,
    kind: Kind,
}

/// Smallest m with C(m, k) >= n.
pub fn minbinom(n: u64, k: u32) -> u32 {
    let mut m = 0u32;
    while binomial(m as u64, k as u64) < n as u128 {
        m += 1;
    }
    m
}

/// Binomial coefficient, saturating at u128::MAX.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i + 1) as u128,
            None => return u128::MAX,
        };
    }
    acc
}

/// Column j of the d-row parity-check matrix over GF(2^r) whose rows are
/// the odd powers alpha^j, alpha^3j, ..., alpha^(2d-1)j. For n = 2^r - 1
/// columns this matrix checks a code of minimum distance at least 2d+1.
pub fn bch_parity_column(field: &Field, d: u32, j: u64) -> Result<Vec<u64>, Error> {
    let n = field.order();
    if j >= n {
        return Err(Error::ColumnOutOfRange { index: j, n });
    }
    if 2 * d as u64 > field.size() {
        return Err(Error::Infeasible(format!(
            "syndrome power {} does not fit in GF(2^{})",
            2 * d - 1,
            field.degree()
        )));
    }
    Ok(raw_bch_column(field, d, j))
}

/// As `bch_parity_column` but without the range guards; exponents are
/// taken modulo the group order.
fn raw_bch_column(field: &Field, d: u32, j: u64) -> Vec<u64> {
    let alpha = field.alpha().value();
    (0..d)
        .map(|c| field.pow_raw(alpha, ((2 * c as u64 + 1) * j) % field.order()))
        .collect()
}

/// Packs a vector of subfield elements into one element of the target
/// field: entry i occupies bits [i*sub_degree, (i+1)*sub_degree).
fn pack(entries: &[u64], sub_degree: u32) -> u64 {
    entries
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &v)| acc | v << (i as u32 * sub_degree))
}

/// The nonzero sums of up to d distinct entries of the returned sequence
/// are pairwise distinct in GF(2^r) (a B_d-sequence, certified by the
/// `verify` module at small scale). Entry 0 is the zero element; entries
/// 1..=n' are packed columns of a distance-(2d+1) parity-check matrix over
/// the subfield GF(n'+1), where n'+1 is the largest power of two with
/// d*log(n'+1) <= r.
pub fn bd_sequence(field: &Field, d: u32) -> Result<Vec<u64>, Error> {
    let sub_degree = field.degree() / d;
    if sub_degree < 2 {
        return Err(Error::Infeasible(format!(
            "no power of two q >= 4 has {}*log(q) <= {}",
            d,
            field.degree()
        )));
    }
    let sub = Field::new(sub_degree)?;
    let mut seq = vec![0u64];
    for j in 0..sub.order() {
        seq.push(pack(&raw_bch_column(&sub, d, j), sub_degree));
    }
    Ok(seq)
}

impl Mapping {
    /// Number of rows (cells).
    pub fn rows(&self) -> usize {
        self.m
    }

    /// Number of columns (universe size).
    pub fn cols(&self) -> u64 {
        self.n
    }

    /// The field the entries live in; `None` for binary matrices.
    pub fn field(&self) -> Option<&Field> {
        match &self.kind {
            Kind::BchGf { field, .. }
            | Kind::BdDiag { field, .. }
            | Kind::H2 { field, .. }
            | Kind::H2Hat { field, .. } => Some(field),
            Kind::Padded { inner, .. } => inner.field(),
            _ => None,
        }
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    /// True when the last row is the all-ones row over GF(2), the hook the
    /// extended peeling cardinality guard relies on.
    pub fn has_all_ones_last_row(&self) -> bool {
        match &self.kind {
            Kind::AllColsPlusOnes { .. }
            | Kind::ConstWtPlusOnes { .. }
            | Kind::BchBinPlusOnes { .. } => true,
            Kind::Padded { inner, .. } => inner.field().is_none(),
            _ => false,
        }
    }

    /// The block vector of a diagonal block matrix, when this is one.
    pub fn bd_block(&self) -> Option<&[u64]> {
        match &self.kind {
            Kind::BdDiag { block, .. } => Some(block),
            Kind::Padded { inner, .. } => inner.bd_block(),
            _ => None,
        }
    }

    /// Sparse column j: the (row, value) pairs of its nonzero entries.
    /// Binary matrices report value 1.
    pub fn entries(&self, j: u64) -> Result<Vec<(usize, u64)>, Error> {
        if j >= self.n {
            return Err(Error::ColumnOutOfRange {
                index: j,
                n: self.n,
            });
        }
        Ok(match &self.kind {
            Kind::Example2 => EXAMPLE2_SUPPORTS[j as usize]
                .iter()
                .map(|&i| (i, 1))
                .collect(),
            Kind::AllColsPlusOnes { r } => {
                let mut out: Vec<(usize, u64)> = (0..*r)
                    .filter(|&b| (j >> b) & 1 == 1)
                    .map(|b| (b as usize, 1))
                    .collect();
                out.push((*r as usize, 1));
                out
            }
            Kind::ConstWtPlusOnes { k } => {
                let mut out = unrank_combination(j, (self.m - 1) as u32, *k)
                    .into_iter()
                    .map(|i| (i, 1))
                    .collect::<Vec<_>>();
                out.push((self.m - 1, 1));
                out
            }
            Kind::BchBinPlusOnes { field } => {
                let r = field.degree();
                let col = raw_bch_column(field, 2, j);
                let mut out = Vec::new();
                for (c, v) in col.iter().enumerate() {
                    for i in 0..r {
                        if (v >> i) & 1 == 1 {
                            out.push((c * r as usize + i as usize, 1));
                        }
                    }
                }
                out.push((self.m - 1, 1));
                out
            }
            Kind::BchGf { field, d } => raw_bch_column(field, *d, j)
                .into_iter()
                .enumerate()
                .collect(),
            Kind::BdDiag { block, .. } => {
                let l = block.len() as u64;
                vec![((j / l) as usize, block[(j % l) as usize])]
            }
            Kind::H2 { gu, gl, .. } => {
                let np = gu.len() as u64;
                let (t, s) = ((j / np) as usize, (j % np) as usize);
                vec![(t, gu[s]), (t + 1, gl[s])]
            }
            Kind::H2Hat { gu, gl, .. } => {
                let w = 3 * gu.len() as u64;
                let (t, c) = ((j / w) as usize, j % w);
                let (block, i) = (
                    (c / gu.len() as u64) as usize,
                    (c % gu.len() as u64) as usize,
                );
                let base = 2 * t;
                match block {
                    0 => vec![(base, gu[i]), (base + 1, gl[i])],
                    1 => vec![(base + 1, gu[i]), (base + 2, gl[i])],
                    _ => vec![(base, gu[i]), (base + 2, gl[i])],
                }
            }
            Kind::Custom { supports } => supports[j as usize].iter().map(|&i| (i, 1)).collect(),
            Kind::Padded { inner, constants } => {
                let mut out = inner.entries(j)?;
                let base = inner.rows();
                out.extend(constants.iter().enumerate().map(|(t, &c)| (base + t, c)));
                out
            }
        })
    }

    /// Dense column j as a length-m vector.
    pub fn column(&self, j: u64) -> Result<Vec<u64>, Error> {
        let mut col = vec![0u64; self.m];
        for (i, v) in self.entries(j)? {
            col[i] = v;
        }
        Ok(col)
    }

    /// Number of nonzero entries of column j.
    pub fn weight(&self, j: u64) -> Result<usize, Error> {
        Ok(self.entries(j)?.len())
    }

    /// Binary columns over a row range packed as bitmasks (row -> bit),
    /// for minimum-distance search. Only valid for binary matrices with at
    /// most 64 selected rows.
    pub fn packed_binary_columns(&self, rows: std::ops::Range<usize>) -> Result<Vec<u64>, Error> {
        if self.field().is_some() {
            return Err(Error::InvalidConfig(
                "packed binary columns require a binary matrix".into(),
            ));
        }
        if rows.end > self.m || rows.len() > 64 {
            return Err(Error::InvalidConfig("row range out of bounds".into()));
        }
        (0..self.n)
            .map(|j| {
                Ok(self
                    .entries(j)?
                    .into_iter()
                    .filter(|(i, _)| rows.contains(i))
                    .fold(0u64, |acc, (i, _)| acc | 1 << (i - rows.start)))
            })
            .collect()
    }

    /// The fixed worked-example matrix: 5 cells, 6 weight-2 columns.
    pub fn example2() -> Mapping {
        Mapping {
            m: 5,
            n: 6,
            construction: Construction::Example2,
            kind: Kind::Example2,
        }
    }

    /// All 2^r distinct binary columns of length r (least significant bit
    /// in row 0) plus a final all-ones row.
    pub fn all_columns_plus_ones(r: u32) -> Result<Mapping, Error> {
        if r == 0 || r > 62 {
            return Err(Error::Infeasible(format!("unsupported column length {r}")));
        }
        Ok(Mapping {
            m: r as usize + 1,
            n: 1u64 << r,
            construction: Construction::AllColsPlusOnes,
            kind: Kind::AllColsPlusOnes { r },
        })
    }

    /// The first n weight-k columns of length minbinom(n, k) in
    /// lexicographic order of their support sets, plus a final all-ones
    /// row; every column has weight k+1.
    pub fn constant_weight_plus_ones(n: u64, k: u32) -> Result<Mapping, Error> {
        if n == 0 || k == 0 {
            return Err(Error::Infeasible("need n >= 1 and k >= 1".into()));
        }
        let m1 = minbinom(n, k);
        Ok(Mapping {
            m: m1 as usize + 1,
            n,
            construction: Construction::ConstWtPlusOnes,
            kind: Kind::ConstWtPlusOnes { k },
        })
    }

    /// Bitwise expansion of the two-syndrome parity-check matrix over
    /// GF(2^r) (bit i of row c lands in expanded row c*r+i) plus a final
    /// all-ones row: 2r+1 rows, n = 2^r - 1 columns. The first 2r rows
    /// check a binary code of minimum distance 5.
    pub fn bch_binary_plus_ones(r: u32) -> Result<Mapping, Error> {
        Mapping::bch_binary_plus_ones_from(Field::new(r)?)
    }

    /// As [`Mapping::bch_binary_plus_ones`] over a caller-supplied field.
    pub fn bch_binary_plus_ones_from(field: Field) -> Result<Mapping, Error> {
        Ok(Mapping {
            m: 2 * field.degree() as usize + 1,
            n: field.order(),
            construction: Construction::BchBinPlusOnes,
            kind: Kind::BchBinPlusOnes { field },
        })
    }

    /// The d-row parity-check matrix over GF(2^r) with n = 2^r - 1 columns.
    pub fn bch_gf(field: Field, d: u32) -> Result<Mapping, Error> {
        if d == 0 {
            return Err(Error::Infeasible("need d >= 1".into()));
        }
        if 2 * d as u64 > field.size() {
            return Err(Error::Infeasible(format!(
                "syndrome power {} does not fit in GF(2^{})",
                2 * d - 1,
                field.degree()
            )));
        }
        let n = field.order();
        Ok(Mapping {
            m: d as usize,
            n,
            construction: Construction::BchGf,
            kind: Kind::BchGf { field, d },
        })
    }

    /// Diagonal block matrix over the nonzero part g_1..g_l of a
    /// B_d-sequence: column j has the single entry g_(j mod l + 1) in row
    /// floor(j / l); the last block is shortened to make exactly n columns.
    pub fn block_diagonal(field: Field, block: Vec<u64>, n: u64) -> Result<Mapping, Error> {
        if block.is_empty() || block.contains(&0) {
            return Err(Error::Infeasible(
                "block vector must be nonzero elements only".into(),
            ));
        }
        if n == 0 {
            return Err(Error::Infeasible("need n >= 1".into()));
        }
        let m = n.div_ceil(block.len() as u64) as usize;
        Ok(Mapping {
            m,
            n,
            construction: Construction::BdDiag,
            kind: Kind::BdDiag { field, block },
        })
    }

    /// Weight-1 scheme matrix: `block_diagonal` over the constructed
    /// B_d-sequence for the field, zero element dropped.
    pub fn bd_diag(field: Field, d: u32, n: u64) -> Result<Mapping, Error> {
        let mut seq = bd_sequence(&field, d)?;
        seq.remove(0);
        Mapping::block_diagonal(field, seq, n)
    }

    /// Weight-2 staircase for even d > 2: each column of the subfield
    /// parity-check matrix is split into packed upper and lower halves,
    /// block t placing the upper half in row t and the lower half in row
    /// t+1; ceil(n / n') + 1 rows in total.
    pub fn block_h2(field: Field, d: u32, n: u64) -> Result<Mapping, Error> {
        if d <= 2 || !d.is_multiple_of(2) {
            return Err(Error::Infeasible("need even d > 2".into()));
        }
        if n == 0 {
            return Err(Error::Infeasible("need n >= 1".into()));
        }
        let sub_degree = 2 * field.degree() / d;
        if sub_degree < 2 {
            return Err(Error::Infeasible(format!(
                "no power of two q >= 4 has {}*log(q) <= {}",
                d,
                2 * field.degree()
            )));
        }
        let sub = Field::new(sub_degree)?;
        let half = d / 2;
        let mut gu = Vec::new();
        let mut gl = Vec::new();
        for j in 0..sub.order() {
            let col = raw_bch_column(&sub, d, j);
            gu.push(pack(&col[..half as usize], sub_degree));
            gl.push(pack(&col[half as usize..], sub_degree));
        }
        let m = n.div_ceil(gu.len() as u64) as usize + 1;
        Ok(Mapping {
            m,
            n,
            construction: Construction::H2,
            kind: Kind::H2 { field, gu, gl },
        })
    }

    /// Weight-2 construction specialized to d = 4: the subfield
    /// parity-check matrix loses its left-most column, its packed halves
    /// form a 3x3-block tile, and tiles repeat down a staircase sharing one
    /// row, giving 2*ceil(n / (3(n'-1))) + 1 rows.
    pub fn block_h2_hat(field: Field, n: u64) -> Result<Mapping, Error> {
        if n == 0 {
            return Err(Error::Infeasible("need n >= 1".into()));
        }
        let sub_degree = field.degree() / 2;
        if sub_degree < 2 {
            return Err(Error::Infeasible(format!(
                "no power of two q >= 4 has 2*log(q) <= {}",
                field.degree()
            )));
        }
        let sub = Field::new(sub_degree)?;
        let mut gu = Vec::new();
        let mut gl = Vec::new();
        // column j = 0 is excluded: its halves pack to the same value, so
        // the three tile columns built from it would sum to zero
        for j in 1..sub.order() {
            let col = raw_bch_column(&sub, 4, j);
            gu.push(pack(&col[..2], sub_degree));
            gl.push(pack(&col[2..], sub_degree));
        }
        let tiles = n.div_ceil(3 * gu.len() as u64) as usize;
        Ok(Mapping {
            m: 2 * tiles + 1,
            n,
            construction: Construction::H2Hat,
            kind: Kind::H2Hat { field, gu, gl },
        })
    }

    /// A binary matrix given directly by its column supports.
    pub fn from_binary_columns(m: usize, supports: Vec<Vec<usize>>) -> Result<Mapping, Error> {
        for s in &supports {
            if s.iter().any(|&i| i >= m) {
                return Err(Error::InvalidConfig("support row out of range".into()));
            }
        }
        Ok(Mapping {
            m,
            n: supports.len() as u64,
            construction: Construction::Custom,
            kind: Kind::Custom { supports },
        })
    }

    /// Appends `extra` redundant rows, each the all-ones row scaled by a
    /// distinct nonzero constant (successive powers of alpha for field
    /// matrices, ones for binary), raising every column weight by exactly
    /// `extra` without affecting state uniqueness.
    pub fn pad_redundant(self, extra: u32) -> Result<Mapping, Error> {
        if extra == 0 {
            return Ok(self);
        }
        let constants: Vec<u64> = match self.field() {
            Some(field) => {
                if extra as u64 > field.order() {
                    return Err(Error::Infeasible(
                        "not enough distinct nonzero constants".into(),
                    ));
                }
                let alpha = field.alpha().value();
                (0..extra).map(|t| field.pow_raw(alpha, t as u64)).collect()
            }
            None => vec![1; extra as usize],
        };
        Ok(Mapping {
            m: self.m + extra as usize,
            n: self.n,
            construction: self.construction,
            kind: Kind::Padded {
                inner: Box::new(self),
                constants,
            },
        })
    }
}

/// The j-th k-subset of {0..m1-1} in lexicographic order.
fn unrank_combination(mut j: u64, m1: u32, k: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(k as usize);
    let mut c = 0u32;
    let mut remaining = k;
    while remaining > 0 {
        let with_c = binomial((m1 - c - 1) as u64, (remaining - 1) as u64);
        if (j as u128) < with_c {
            out.push(c as usize);
            remaining -= 1;
        } else {
            j -= with_c as u64;
        }
        c += 1;
    }
    out
}
