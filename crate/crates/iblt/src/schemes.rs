//! Lookup tables and the insert/delete/mapping operations of the three
//! scheme families, with exact bit accounting s(T) = m*b.

use crate::error::Error;
use crate::matrices::{Construction, Mapping};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Standard,
    StandardIndel,
    General,
}

impl Family {
    pub fn id(self) -> &'static str {
        match self {
            Family::Standard => "standard",
            Family::StandardIndel => "standard-indel",
            Family::General => "general",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Some(match s {
            "standard" => Family::Standard,
            "standard-indel" => Family::StandardIndel,
            "general" => Family::General,
            _ => return None,
        })
    }
}

/// Cell contents of a table. Binary families keep a wrapping counter and
/// an XOR accumulator of element encodings per cell; the general family
/// keeps a single field element per cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableData {
    Binary { counts: Vec<u32>, xors: Vec<u64> },
    Field { cells: Vec<u64> },
}

/// A lookup table; value-semantic, always paired with its [`Scheme`] for
/// operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub data: TableData,
}

impl Table {
    pub fn is_zero(&self) -> bool {
        match &self.data {
            TableData::Binary { counts, xors } => {
                counts.iter().all(|&c| c == 0) && xors.iter().all(|&x| x == 0)
            }
            TableData::Field { cells } => cells.iter().all(|&c| c == 0),
        }
    }
}

/// A fully instantiated scheme: family, mapping matrix, universe bounds
/// and cell layout.
#[derive(Debug, Clone)]
pub struct Scheme {
    family: Family,
    mapping: Mapping,
    d: u32,
    counter_bits: u32,
    xorsum_bits: u32,
    element_base: u64,
}

fn ceil_log2(n: u64) -> u32 {
    debug_assert!(n >= 1);
    64 - (n - 1).leading_zeros().min(63)
}

impl Scheme {
    pub fn new(
        family: Family,
        mapping: Mapping,
        d: u32,
        counter_bits: u32,
    ) -> Result<Scheme, Error> {
        let n = mapping.cols();
        if d == 0 || d as u64 > n {
            return Err(Error::InvalidConfig(format!(
                "need 1 <= d <= n, got d={d}, n={n}"
            )));
        }
        let (xorsum_bits, element_base) = match family {
            Family::General => {
                let field = mapping.field().ok_or_else(|| {
                    Error::InvalidConfig("general family needs a field matrix".into())
                })?;
                if counter_bits != 0 {
                    return Err(Error::InvalidConfig(
                        "general family cells have no counter field".into(),
                    ));
                }
                (field.degree(), 1)
            }
            Family::Standard | Family::StandardIndel => {
                if mapping.field().is_some() {
                    return Err(Error::InvalidConfig(format!(
                        "{} family needs a binary matrix",
                        family.id()
                    )));
                }
                let xorsum_bits = ceil_log2(n).max(1);
                match family {
                    Family::Standard if counter_bits != xorsum_bits => {
                        return Err(Error::InvalidConfig(format!(
                            "standard family uses {xorsum_bits}-bit counters for n={n}"
                        )));
                    }
                    Family::StandardIndel
                        if ![1, 2, ceil_log2(d as u64).max(1)].contains(&counter_bits) =>
                    {
                        return Err(Error::InvalidConfig(format!(
                            "standard-indel counters must be 1, 2 or ceil(log2 d) bits, got {counter_bits}"
                        )));
                    }
                    _ => {}
                }
                let base = match mapping.construction() {
                    Construction::Example2 => 1,
                    _ => 0,
                };
                (xorsum_bits, base)
            }
        };
        Ok(Scheme {
            family,
            mapping,
            d,
            counter_bits,
            xorsum_bits,
            element_base,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn mapping_matrix(&self) -> &Mapping {
        &self.mapping
    }

    pub fn construction(&self) -> Construction {
        self.mapping.construction()
    }

    /// Decodability target this scheme is configured for.
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> u64 {
        self.mapping.cols()
    }

    pub fn cells(&self) -> usize {
        self.mapping.rows()
    }

    pub fn counter_bits(&self) -> u32 {
        self.counter_bits
    }

    /// Cell width b in bits.
    pub fn bits_per_cell(&self) -> u32 {
        match self.family {
            Family::General => self.xorsum_bits,
            _ => self.counter_bits + self.xorsum_bits,
        }
    }

    /// Total table memory s(T) = m*b in bits.
    pub fn size_bits(&self) -> u64 {
        self.cells() as u64 * self.bits_per_cell() as u64
    }

    /// Smallest and largest valid element.
    pub fn universe(&self) -> (u64, u64) {
        (self.element_base, self.element_base + self.n() - 1)
    }

    fn column_of(&self, u: u64) -> Result<u64, Error> {
        let (lo, hi) = self.universe();
        if u < lo || u > hi {
            return Err(Error::ElementOutOfRange { element: u, lo, hi });
        }
        Ok(u - lo)
    }

    /// Element whose matrix column is j.
    pub fn element_for_column(&self, j: u64) -> u64 {
        self.element_base + j
    }

    /// The set of cells element u maps to.
    pub fn mapping(&self, u: u64) -> Result<Vec<usize>, Error> {
        let j = self.column_of(u)?;
        Ok(self
            .mapping
            .entries(j)?
            .into_iter()
            .map(|(i, _)| i)
            .collect())
    }

    pub fn new_table(&self) -> Table {
        let m = self.cells();
        Table {
            data: match self.family {
                Family::General => TableData::Field { cells: vec![0; m] },
                _ => TableData::Binary {
                    counts: vec![0; m],
                    xors: vec![0; m],
                },
            },
        }
    }

    /// Inserts u (assumed not currently stored) by updating exactly the
    /// mapped cells.
    pub fn insert(&self, table: &mut Table, u: u64) -> Result<(), Error> {
        self.apply(table, u, true)
    }

    /// Deletes u (assumed currently stored); for the general family this
    /// is the identical cell update as insert.
    pub fn delete(&self, table: &mut Table, u: u64) -> Result<(), Error> {
        self.apply(table, u, false)
    }

    fn apply(&self, table: &mut Table, u: u64, inserting: bool) -> Result<(), Error> {
        let j = self.column_of(u)?;
        let entries = self.mapping.entries(j)?;
        match (&mut table.data, self.family) {
            (TableData::Field { cells }, Family::General) => {
                for (i, v) in entries {
                    cells[i] ^= v;
                }
            }
            (TableData::Binary { counts, xors }, _) => {
                let mask = ((1u64 << self.counter_bits) - 1) as u32;
                for (i, _) in entries {
                    counts[i] = if inserting {
                        (counts[i] + 1) & mask
                    } else {
                        (counts[i].wrapping_sub(1)) & mask
                    };
                    xors[i] ^= u;
                }
            }
            _ => unreachable!("table data always matches the scheme family"),
        }
        Ok(())
    }

    /// Table holding exactly the given set; order-independent.
    pub fn state_of<I: IntoIterator<Item = u64>>(&self, set: I) -> Result<Table, Error> {
        let mut t = self.new_table();
        for u in set {
            self.insert(&mut t, u)?;
        }
        Ok(t)
    }

    /// Canonical bit-packed form: cells in index order, counter bits then
    /// xorsum bits per cell, most significant bit first, zero-padded to a
    /// byte boundary at the end only.
    pub fn canonical_bytes(&self, table: &Table) -> Vec<u8> {
        let mut w = BitWriter::default();
        match &table.data {
            TableData::Binary { counts, xors } => {
                for i in 0..counts.len() {
                    w.push(counts[i] as u64, self.counter_bits);
                    w.push(xors[i], self.xorsum_bits);
                }
            }
            TableData::Field { cells } => {
                for &c in cells {
                    w.push(c, self.xorsum_bits);
                }
            }
        }
        w.finish()
    }

    /// Inverse of [`Scheme::canonical_bytes`].
    pub fn table_from_bytes(&self, bytes: &[u8]) -> Result<Table, Error> {
        let m = self.cells();
        let total_bits = self.size_bits();
        if bytes.len() as u64 != total_bits.div_ceil(8) {
            return Err(Error::BadTableFile(format!(
                "expected {} bytes of cell data, found {}",
                total_bits.div_ceil(8),
                bytes.len()
            )));
        }
        let mut r = BitReader::new(bytes);
        let data = match self.family {
            Family::General => {
                let cells = (0..m).map(|_| r.pull(self.xorsum_bits)).collect();
                TableData::Field { cells }
            }
            _ => {
                let mut counts = Vec::with_capacity(m);
                let mut xors = Vec::with_capacity(m);
                for _ in 0..m {
                    counts.push(r.pull(self.counter_bits) as u32);
                    xors.push(r.pull(self.xorsum_bits));
                }
                TableData::Binary { counts, xors }
            }
        };
        if r.trailing_nonzero() {
            return Err(Error::BadTableFile("nonzero padding bits".into()));
        }
        Ok(Table { data })
    }
}

/// Total number of subsets of size at most d from an n-element universe.
pub fn states_up_to(n: u64, d: u32) -> u128 {
    (0..=d as u64)
        .map(|i| crate::matrices::binomial(n, i))
        .sum()
}

/// Visits every set of at most `d` universe elements together with its
/// table state, in lexicographic order of the sorted element sequences
/// (depth-first, so each step is a single insert or delete). The visitor
/// can stop the walk early by returning `ControlFlow::Break`.
pub fn for_each_state<B>(
    scheme: &Scheme,
    d: u32,
    mut visit: impl FnMut(&[u64], &Table) -> std::ops::ControlFlow<B>,
) -> Result<Option<B>, Error> {
    fn go<B>(
        scheme: &Scheme,
        table: &mut Table,
        set: &mut Vec<u64>,
        next: u64,
        hi: u64,
        depth: u32,
        visit: &mut impl FnMut(&[u64], &Table) -> std::ops::ControlFlow<B>,
    ) -> Result<Option<B>, Error> {
        if let std::ops::ControlFlow::Break(b) = visit(set, table) {
            return Ok(Some(b));
        }
        if depth == 0 {
            return Ok(None);
        }
        let mut u = next;
        while u <= hi {
            scheme.insert(table, u)?;
            set.push(u);
            let r = go(scheme, table, set, u + 1, hi, depth - 1, visit)?;
            set.pop();
            scheme.delete(table, u)?;
            if r.is_some() {
                return Ok(r);
            }
            u += 1;
        }
        Ok(None)
    }
    let (lo, hi) = scheme.universe();
    let mut table = scheme.new_table();
    let mut set = Vec::new();
    go(scheme, &mut table, &mut set, lo, hi, d, &mut visit)
}

#[derive(Default)]
struct BitWriter {
    bytes: Vec<u8>,
    bit: u32,
}

impl BitWriter {
    fn push(&mut self, value: u64, bits: u32) {
        for k in (0..bits).rev() {
            if self.bit == 0 {
                self.bytes.push(0);
            }
            let b = (value >> k) & 1;
            let last = self.bytes.last_mut().unwrap();
            *last |= (b as u8) << (7 - self.bit);
            self.bit = (self.bit + 1) % 8;
        }
    }

    fn finish(self) -> Vec<u8> {
        self.bytes
    }
}

struct BitReader<'a> {
    bytes: &'a [u8],
    pos: u64,
}

impl<'a> BitReader<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        BitReader { bytes, pos: 0 }
    }

    fn pull(&mut self, bits: u32) -> u64 {
        let mut v = 0;
        for _ in 0..bits {
            let byte = self.bytes[(self.pos / 8) as usize];
            let b = (byte >> (7 - self.pos % 8)) & 1;
            v = v << 1 | b as u64;
            self.pos += 1;
        }
        v
    }

    fn trailing_nonzero(&self) -> bool {
        let mut p = self.pos;
        while p < self.bytes.len() as u64 * 8 {
            if (self.bytes[(p / 8) as usize] >> (7 - p % 8)) & 1 == 1 {
                return true;
            }
            p += 1;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn example2_scheme() -> Scheme {
        Scheme::new(Family::Standard, Mapping::example2(), 2, 3).unwrap()
    }

    fn gf_scheme(r: u32, d: u32) -> Scheme {
        let m = Mapping::bch_gf(Field::new(r).unwrap(), d).unwrap();
        Scheme::new(Family::General, m, d, 0).unwrap()
    }

    #[test]
    fn example2_counter_array() {
        let s = example2_scheme();
        let t = s.state_of([1, 3, 4]).unwrap();
        match &t.data {
            TableData::Binary { counts, .. } => assert_eq!(counts, &vec![2, 1, 2, 0, 1]),
            _ => unreachable!(),
        }
        assert_eq!(s.mapping(1).unwrap(), vec![0, 2]);
    }

    #[test]
    fn size_bits_golden_values() {
        // one-bit-counter scheme over all 16 columns
        let s = Scheme::new(
            Family::StandardIndel,
            Mapping::all_columns_plus_ones(4).unwrap(),
            3,
            1,
        )
        .unwrap();
        assert_eq!((s.cells(), s.bits_per_cell(), s.size_bits()), (5, 5, 25));
        // two-bit-counter scheme over the expanded parity-check matrix
        let s = Scheme::new(
            Family::StandardIndel,
            Mapping::bch_binary_plus_ones(4).unwrap(),
            4,
            2,
        )
        .unwrap();
        assert_eq!((s.cells(), s.bits_per_cell(), s.size_bits()), (9, 6, 54));
        // syndrome scheme: two field cells
        let s = gf_scheme(4, 2);
        assert_eq!((s.cells(), s.bits_per_cell(), s.size_bits()), (2, 4, 8));
    }

    #[test]
    fn general_state_matches_field_oracle() {
        let s = gf_scheme(4, 2);
        let t = s.state_of([1, 2]).unwrap();
        assert_eq!(
            t.data,
            TableData::Field {
                cells: vec![0b0011, 0b1001]
            }
        );
    }

    #[test]
    fn general_delete_is_insert() {
        let s = gf_scheme(4, 2);
        let mut a = s.new_table();
        let mut b = s.new_table();
        s.insert(&mut a, 7).unwrap();
        s.delete(&mut b, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn insert_then_delete_round_trips() {
        let s = example2_scheme();
        let mut t = s.new_table();
        for u in [1, 3, 4] {
            s.insert(&mut t, u).unwrap();
        }
        for u in [4, 1, 3] {
            s.delete(&mut t, u).unwrap();
        }
        assert!(t.is_zero());
    }

    #[test]
    fn one_bit_counters_wrap() {
        let s = Scheme::new(
            Family::StandardIndel,
            Mapping::all_columns_plus_ones(4).unwrap(),
            3,
            1,
        )
        .unwrap();
        // 1 and 3 share the bit-0 row; its counter wraps to zero
        let t = s.state_of([1, 3]).unwrap();
        match &t.data {
            TableData::Binary { counts, .. } => {
                assert_eq!(counts[0], 0);
                assert_eq!(counts[1], 1);
                assert_eq!(counts[4], 0);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn wraparound_makes_deletion_order_irrelevant() {
        // deleting before inserting passes through the counter modulus
        // and still cancels
        let s = Scheme::new(
            Family::StandardIndel,
            Mapping::bch_binary_plus_ones(4).unwrap(),
            4,
            2,
        )
        .unwrap();
        let mut t = s.new_table();
        s.delete(&mut t, 7).unwrap();
        assert!(!t.is_zero());
        s.insert(&mut t, 7).unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn state_is_order_independent() {
        let s = gf_scheme(4, 3);
        let a = s.state_of([3, 9, 14]).unwrap();
        let b = s.state_of([14, 3, 9]).unwrap();
        assert_eq!(a, b);
        assert!(s.state_of([]).unwrap().is_zero());
    }

    #[test]
    fn element_range_is_checked() {
        let s = example2_scheme();
        let mut t = s.new_table();
        assert!(matches!(
            s.insert(&mut t, 0),
            Err(Error::ElementOutOfRange { .. })
        ));
        assert!(matches!(
            s.insert(&mut t, 7),
            Err(Error::ElementOutOfRange { .. })
        ));
        let g = gf_scheme(4, 2);
        let mut t = g.new_table();
        assert!(matches!(
            g.insert(&mut t, 0),
            Err(Error::ElementOutOfRange { .. })
        ));
        assert!(matches!(
            g.insert(&mut t, 16),
            Err(Error::ElementOutOfRange { .. })
        ));
    }

    #[test]
    fn config_combinations_are_validated() {
        // general family rejects counters
        let m = Mapping::bch_gf(Field::new(4).unwrap(), 2).unwrap();
        assert!(Scheme::new(Family::General, m, 2, 1).is_err());
        // general family rejects binary matrices
        assert!(Scheme::new(Family::General, Mapping::example2(), 2, 0).is_err());
        // standard family pins the counter width
        assert!(Scheme::new(Family::Standard, Mapping::example2(), 2, 1).is_err());
        // indel family accepts only the narrow widths
        let m = Mapping::all_columns_plus_ones(4).unwrap();
        assert!(Scheme::new(Family::StandardIndel, m, 3, 4).is_err());
    }

    #[test]
    fn canonical_bytes_layout() {
        let s = gf_scheme(4, 2);
        let t = s.state_of([1, 2]).unwrap();
        assert_eq!(s.canonical_bytes(&t), vec![0x39]);
        let s = example2_scheme();
        let t = s.state_of([1, 3, 4]).unwrap();
        assert_eq!(s.canonical_bytes(&t), vec![0x48, 0xC5, 0x40, 0x2C]);
    }

    #[test]
    fn bytes_round_trip() {
        let s = gf_scheme(4, 2);
        let t = s.state_of([1, 5, 9]).unwrap();
        let bytes = s.canonical_bytes(&t);
        assert_eq!(s.table_from_bytes(&bytes).unwrap(), t);
        let s = example2_scheme();
        let t = s.state_of([2, 6]).unwrap();
        let bytes = s.canonical_bytes(&t);
        assert_eq!(s.table_from_bytes(&bytes).unwrap(), t);
    }
}
