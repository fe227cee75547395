//! Listing algorithms: classic peeling, extended peeling with the
//! two-cell recovery step, the one-bit-counter case analysis for up to
//! three elements, syndrome decoding for the general family, per-cell
//! decoding for weight-1 schemes, and a precomputed lookup oracle.
//!
//! Every algorithm works on a private copy of the table and reports
//! either the recovered set (sorted) or an explicit failure. Success
//! outcomes always re-encode to the input table.

use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::error::Error;
use crate::field::Field;
use crate::matrices::Construction;
use crate::schemes::{for_each_state, states_up_to, Family, Scheme, Table, TableData};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ListingOutcome {
    Success(Vec<u64>),
    Failure,
}

impl ListingOutcome {
    pub fn success(&self) -> Option<&[u64]> {
        match self {
            ListingOutcome::Success(s) => Some(s),
            ListingOutcome::Failure => None,
        }
    }

    fn from_set(mut elems: Vec<u64>) -> ListingOutcome {
        elems.sort_unstable();
        let before = elems.len();
        elems.dedup();
        if elems.len() != before {
            return ListingOutcome::Failure;
        }
        ListingOutcome::Success(elems)
    }
}

/// Identifiers for the listing algorithms, as used by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgorithmId {
    Peel,
    ExtendedPeel,
    D3OneBit,
    Pgz,
    K1Bd,
    Oracle,
}

impl AlgorithmId {
    pub fn id(self) -> &'static str {
        match self {
            AlgorithmId::Peel => "peel",
            AlgorithmId::ExtendedPeel => "xpeel",
            AlgorithmId::D3OneBit => "d3",
            AlgorithmId::Pgz => "pgz",
            AlgorithmId::K1Bd => "k1bd",
            AlgorithmId::Oracle => "oracle",
        }
    }

    pub fn parse(s: &str) -> Option<AlgorithmId> {
        Some(match s {
            "peel" => AlgorithmId::Peel,
            "xpeel" => AlgorithmId::ExtendedPeel,
            "d3" => AlgorithmId::D3OneBit,
            "pgz" => AlgorithmId::Pgz,
            "k1bd" => AlgorithmId::K1Bd,
            "oracle" => AlgorithmId::Oracle,
            _ => return None,
        })
    }
}

/// Runs the named algorithm; `oracle` must be supplied for
/// [`AlgorithmId::Oracle`].
pub fn run_algorithm(
    alg: AlgorithmId,
    scheme: &Scheme,
    table: &Table,
    oracle: Option<&ListingOracle>,
) -> Result<ListingOutcome, Error> {
    match alg {
        AlgorithmId::Peel => peel(scheme, table),
        AlgorithmId::ExtendedPeel => extended_peel(scheme, table),
        AlgorithmId::D3OneBit => list_d3_onebit(scheme, table),
        AlgorithmId::Pgz => pgz_decode(scheme, table),
        AlgorithmId::K1Bd => list_k1_bd(scheme, table),
        AlgorithmId::Oracle => match oracle {
            Some(o) => Ok(o.lookup(scheme, table)),
            None => Err(Error::IncompatibleAlgorithm {
                algorithm: "oracle".into(),
                reason: "no precomputed oracle supplied".into(),
            }),
        },
    }
}

fn require_binary(scheme: &Scheme, algorithm: &str) -> Result<(), Error> {
    if scheme.family() == Family::General {
        return Err(Error::IncompatibleAlgorithm {
            algorithm: algorithm.into(),
            reason: "needs a counter/xorSum table".into(),
        });
    }
    Ok(())
}

fn binary_cells(table: &Table) -> (&[u32], &[u64]) {
    match &table.data {
        TableData::Binary { counts, xors } => (counts, xors),
        TableData::Field { .. } => unreachable!("checked by require_binary"),
    }
}

/// Extracts elements from pure cells (counter exactly 1), scanning cells
/// in ascending index order and restarting after each extraction. Returns
/// false if an extracted value falls outside the universe or the loop
/// exceeds the universe size.
fn peel_pass(scheme: &Scheme, table: &mut Table, out: &mut Vec<u64>) -> bool {
    let (lo, hi) = scheme.universe();
    loop {
        let (counts, xors) = binary_cells(table);
        let Some(i) = counts.iter().position(|&c| c == 1) else {
            return true;
        };
        let u = xors[i];
        if u < lo || u > hi || out.len() as u64 > scheme.n() {
            return false;
        }
        scheme.delete(table, u).expect("u validated in range");
        out.push(u);
    }
}

/// Classic peeling: repeatedly extract from pure cells; succeeds when the
/// table drains to all-zero.
pub fn peel(scheme: &Scheme, table: &Table) -> Result<ListingOutcome, Error> {
    require_binary(scheme, "peel")?;
    let mut t = table.clone();
    let mut out = Vec::new();
    if !peel_pass(scheme, &mut t, &mut out) || !t.is_zero() {
        return Ok(ListingOutcome::Failure);
    }
    Ok(ListingOutcome::from_set(out))
}

/// Peeling extended with a two-cell recovery step: when no pure cell is
/// left and the residual cardinality can still be at most d, a pair of
/// cells whose counters differ by one (modulo the counter range) reveals
/// the next element as the XOR of their xorSum fields.
///
/// For matrices whose last row is all ones, the last counter pins the
/// residual cardinality (3, or 4 when it reads 0 on a nonzero table) and
/// the pair search is anchored at that cell, which makes every qualifying
/// partner cell reveal a genuine element. Without an all-ones row the pair
/// step runs unguarded over all cell pairs; the final all-zero check keeps
/// the outcome sound either way.
pub fn extended_peel(scheme: &Scheme, table: &Table) -> Result<ListingOutcome, Error> {
    require_binary(scheme, "xpeel")?;
    let modulus = 1u32 << scheme.counter_bits();
    let (lo, hi) = scheme.universe();
    let anchored = scheme.mapping_matrix().has_all_ones_last_row();
    let last = scheme.cells() - 1;

    let mut t = table.clone();
    let mut out = Vec::new();
    for _ in 0..=scheme.n() {
        if !peel_pass(scheme, &mut t, &mut out) {
            return Ok(ListingOutcome::Failure);
        }
        if t.is_zero() {
            return Ok(ListingOutcome::from_set(out));
        }
        let (counts, xors) = binary_cells(&t);
        let pair = if anchored {
            // residual cardinality from the all-ones cell counter
            let residual = match counts[last] {
                3 => 3,
                0 => 4,
                _ => u32::MAX,
            };
            if residual > scheme.d() {
                return Ok(ListingOutcome::Failure);
            }
            (0..last)
                .find(|&j| (counts[last].wrapping_sub(counts[j])) % modulus == 1)
                .map(|j| (last, j))
        } else {
            let mut found = None;
            'all: for i in 0..counts.len() {
                for j in 0..counts.len() {
                    if i != j && (counts[i].wrapping_sub(counts[j])) % modulus == 1 {
                        found = Some((i, j));
                        break 'all;
                    }
                }
            }
            found
        };
        let Some((i, j)) = pair else {
            return Ok(ListingOutcome::Failure);
        };
        let e = xors[i] ^ xors[j];
        if e < lo || e > hi {
            return Ok(ListingOutcome::Failure);
        }
        scheme.delete(&mut t, e).expect("e validated in range");
        out.push(e);
    }
    Ok(ListingOutcome::Failure)
}

/// Case analysis for one-bit-counter tables with an all-ones last row,
/// guaranteed for every stored set of up to three elements. The last
/// cell's counter and xorSum determine the set parity and total XOR; pure
/// cells (counter 1, xorSum different from the total) and two-element
/// cells (counter 0, xorSum nonzero) reduce the three-element case to the
/// two-element one.
pub fn list_d3_onebit(scheme: &Scheme, table: &Table) -> Result<ListingOutcome, Error> {
    require_binary(scheme, "d3")?;
    if scheme.counter_bits() != 1 || !scheme.mapping_matrix().has_all_ones_last_row() {
        return Err(Error::IncompatibleAlgorithm {
            algorithm: "d3".into(),
            reason: "needs 1-bit counters and an all-ones last row".into(),
        });
    }
    let last = scheme.cells() - 1;
    let (counts, xors) = binary_cells(table);
    let (cm, xm) = (counts[last], xors[last]);

    let outcome = match (cm, xm) {
        (0, 0) => {
            if table.is_zero() {
                ListingOutcome::Success(vec![])
            } else {
                ListingOutcome::Failure
            }
        }
        (0, _) => match resolve_pair(table, xm) {
            Some((u, v)) => checked_success(scheme, table, vec![u, v]),
            None => ListingOutcome::Failure,
        },
        (1, _) => {
            let pure = (0..last).find(|&i| counts[i] == 1 && xors[i] != xm);
            let two = (0..last).find(|&i| counts[i] == 0 && xors[i] != 0);
            if let Some(i) = pure {
                // singleton cell: peel one element, leaving a pair
                let u = xors[i];
                match remove_then_pair(scheme, table, u, xm ^ u) {
                    Some(mut set) => {
                        set.push(u);
                        checked_success(scheme, table, set)
                    }
                    None => ListingOutcome::Failure,
                }
            } else if let Some(i) = two {
                // cell holding exactly two elements: the total XOR gives
                // away the third
                let w = xm ^ xors[i];
                match remove_then_pair(scheme, table, w, xors[i]) {
                    Some(mut set) => {
                        set.push(w);
                        checked_success(scheme, table, set)
                    }
                    None => ListingOutcome::Failure,
                }
            } else {
                checked_success(scheme, table, vec![xm])
            }
        }
        _ => ListingOutcome::Failure,
    };
    Ok(outcome)
}

/// Finds a pure cell in a two-element table and splits the pair via the
/// XOR of the two elements.
fn resolve_pair(table: &Table, pair_xor: u64) -> Option<(u64, u64)> {
    let (counts, xors) = binary_cells(table);
    let i = (0..counts.len()).find(|&i| counts[i] == 1)?;
    Some((xors[i], xors[i] ^ pair_xor))
}

fn remove_then_pair(scheme: &Scheme, table: &Table, u: u64, pair_xor: u64) -> Option<Vec<u64>> {
    let (lo, hi) = scheme.universe();
    if u < lo || u > hi {
        return None;
    }
    let mut t = table.clone();
    scheme.delete(&mut t, u).ok()?;
    let (a, b) = resolve_pair(&t, pair_xor)?;
    Some(vec![a, b])
}

/// Success only if the candidate set re-encodes to the input table.
fn checked_success(scheme: &Scheme, table: &Table, set: Vec<u64>) -> ListingOutcome {
    let outcome = ListingOutcome::from_set(set);
    if let ListingOutcome::Success(elems) = &outcome {
        match scheme.state_of(elems.iter().copied()) {
            Ok(t) if &t == table => outcome,
            _ => ListingOutcome::Failure,
        }
    } else {
        outcome
    }
}

/// Solves for the error locator polynomial from the odd power-sum
/// syndromes, trying degrees from `odd.len()` downward, and returns the
/// locator exponents. Even syndromes come from the characteristic-2
/// squaring identity.
fn pgz_locator_exponents(field: &Field, odd: &[u64]) -> Option<Vec<u64>> {
    let d = odd.len();
    // syndromes S_1..S_2d; S[k] at index k
    let mut s = vec![0u64; 2 * d + 1];
    for (c, &v) in odd.iter().enumerate() {
        s[2 * c + 1] = v;
    }
    for k in 1..=d {
        s[2 * k] = field.mul_raw(s[k], s[k]);
    }
    if s.iter().all(|&v| v == 0) {
        return Some(vec![]);
    }
    for nu in (1..=d).rev() {
        // row k of the system: sum_t lambda_t * S_(k+nu-t) = S_(k+nu)
        let mut mat = vec![0u64; nu * nu];
        let mut rhs = vec![0u64; nu];
        for k in 1..=nu {
            for t in 1..=nu {
                mat[(k - 1) * nu + (t - 1)] = s[k + nu - t];
            }
            rhs[k - 1] = s[k + nu];
        }
        let Some(lambda) = solve_linear(field, &mut mat, &mut rhs, nu) else {
            continue;
        };
        // locator polynomial 1 + lambda_1 x + ... + lambda_nu x^nu,
        // roots found by evaluating at every nonzero element
        let mut exponents = Vec::new();
        for v in 1..field.size() {
            let mut acc = 0u64;
            for &l in lambda.iter().rev() {
                acc = field.mul_raw(acc, v) ^ l;
            }
            acc = field.mul_raw(acc, v) ^ 1;
            if acc == 0 {
                let x = field.inv_raw(v);
                exponents.push(field.log_raw(x).expect("nonzero root"));
            }
        }
        if exponents.len() != nu {
            return None;
        }
        return Some(exponents);
    }
    None
}

/// Gaussian elimination over the field; returns None on a singular system.
fn solve_linear(field: &Field, mat: &mut [u64], rhs: &mut [u64], n: usize) -> Option<Vec<u64>> {
    for col in 0..n {
        let pivot = (col..n).find(|&r| mat[r * n + col] != 0)?;
        mat.swap(pivot * n + col, col * n + col);
        for c in col + 1..n {
            mat.swap(pivot * n + c, col * n + c);
        }
        rhs.swap(pivot, col);
        let inv = field.inv_raw(mat[col * n + col]);
        for c in col..n {
            mat[col * n + c] = field.mul_raw(mat[col * n + c], inv);
        }
        rhs[col] = field.mul_raw(rhs[col], inv);
        for r in 0..n {
            if r != col && mat[r * n + col] != 0 {
                let f = mat[r * n + col];
                for c in col..n {
                    mat[r * n + c] ^= field.mul_raw(f, mat[col * n + c]);
                }
                rhs[r] ^= field.mul_raw(f, rhs[col]);
            }
        }
    }
    Some(rhs.to_vec())
}

/// Syndrome decoding for the general scheme whose matrix rows are the odd
/// powers of alpha: treats the cells as power-sum syndromes, solves for
/// the locator polynomial, maps the locators back to elements, and accepts
/// only if re-encoding reproduces the table.
pub fn pgz_decode(scheme: &Scheme, table: &Table) -> Result<ListingOutcome, Error> {
    if scheme.family() != Family::General || scheme.construction() != Construction::BchGf {
        return Err(Error::IncompatibleAlgorithm {
            algorithm: "pgz".into(),
            reason: "needs a general scheme over the odd-powers parity-check matrix".into(),
        });
    }
    let field = scheme.mapping_matrix().field().expect("general scheme");
    let TableData::Field { cells } = &table.data else {
        return Err(Error::IncompatibleAlgorithm {
            algorithm: "pgz".into(),
            reason: "table does not hold field cells".into(),
        });
    };
    let d = scheme.d() as usize;
    let odd = &cells[..d.min(cells.len())];
    let Some(exponents) = pgz_locator_exponents(field, odd) else {
        return Ok(ListingOutcome::Failure);
    };
    let elems: Vec<u64> = exponents.iter().map(|&e| e + 1).collect();
    Ok(checked_success(scheme, table, elems))
}

/// Per-cell decoding for the weight-1 diagonal scheme: each cell packs the
/// syndromes of the elements mapped to its block, taken over the subfield
/// the block sequence was built from.
pub fn list_k1_bd(scheme: &Scheme, table: &Table) -> Result<ListingOutcome, Error> {
    let block = scheme.mapping_matrix().bd_block();
    let (Family::General, Some(block)) = (scheme.family(), block) else {
        return Err(Error::IncompatibleAlgorithm {
            algorithm: "k1bd".into(),
            reason: "needs a general scheme over a diagonal block matrix".into(),
        });
    };
    let field = scheme.mapping_matrix().field().expect("general scheme");
    let d = scheme.d();
    let sub_degree = field.degree() / d;
    if sub_degree < 2 || block.len() as u64 != (1u64 << sub_degree) - 1 {
        return Err(Error::IncompatibleAlgorithm {
            algorithm: "k1bd".into(),
            reason: "block vector is not a packed syndrome sequence for this d".into(),
        });
    }
    let sub = Field::new(sub_degree)?;
    let mask = (1u64 << sub_degree) - 1;
    let ell = block.len() as u64;
    let TableData::Field { cells } = &table.data else {
        unreachable!("general schemes hold field cells")
    };

    let mut elems = Vec::new();
    for (i, &v) in cells.iter().enumerate() {
        if v == 0 {
            continue;
        }
        let odd: Vec<u64> = (0..d).map(|c| (v >> (c * sub_degree)) & mask).collect();
        let Some(exponents) = pgz_locator_exponents(&sub, &odd) else {
            return Ok(ListingOutcome::Failure);
        };
        for e in exponents {
            let u = i as u64 * ell + e + 1;
            if u > scheme.n() {
                return Ok(ListingOutcome::Failure);
            }
            elems.push(u);
        }
    }
    Ok(checked_success(scheme, table, elems))
}

/// A total listing function realized by precomputation: the canonical
/// state of every set of up to d elements, keyed by its serialized form.
pub struct ListingOracle {
    map: HashMap<Vec<u8>, Vec<u64>>,
    d: u32,
}

impl ListingOracle {
    /// Enumerates all states up to the scheme's decodability target;
    /// refuses if the enumeration exceeds `budget` states, and reports two
    /// colliding sets if the states are not unique.
    pub fn build(scheme: &Scheme, budget: u64) -> Result<ListingOracle, Error> {
        let needed = states_up_to(scheme.n(), scheme.d());
        if needed > budget as u128 {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let mut map: HashMap<Vec<u8>, Vec<u64>> = HashMap::with_capacity(needed as usize);
        let clash = for_each_state(scheme, scheme.d(), |set, table| {
            let key = scheme.canonical_bytes(table);
            if let Some(prev) = map.insert(key, set.to_vec()) {
                return ControlFlow::Break((prev, set.to_vec()));
            }
            ControlFlow::Continue(())
        })?;
        if let Some((a, b)) = clash {
            return Err(Error::AmbiguousStates(a, b));
        }
        Ok(ListingOracle { map, d: scheme.d() })
    }

    pub fn states(&self) -> usize {
        self.map.len()
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn lookup(&self, scheme: &Scheme, table: &Table) -> ListingOutcome {
        match self.map.get(&scheme.canonical_bytes(table)) {
            Some(set) => ListingOutcome::Success(set.clone()),
            None => ListingOutcome::Failure,
        }
    }
}
