//! Randomized invariants via proptest.

use proptest::prelude::*;

use iblt::config::SchemeConfigFile;
use iblt::field::Field;
use iblt::listing::{extended_peel, peel};
use iblt::matrices::Mapping;
use iblt::schemes::{Family, Scheme};

fn any_scheme(idx: usize) -> Scheme {
    match idx % 6 {
        0 => Scheme::new(Family::Standard, Mapping::example2(), 2, 3).unwrap(),
        1 => Scheme::new(
            Family::StandardIndel,
            Mapping::all_columns_plus_ones(4).unwrap(),
            3,
            1,
        )
        .unwrap(),
        2 => Scheme::new(
            Family::StandardIndel,
            Mapping::bch_binary_plus_ones(4).unwrap(),
            4,
            2,
        )
        .unwrap(),
        3 => {
            let m = Mapping::bch_gf(Field::new(8).unwrap(), 2).unwrap();
            Scheme::new(Family::General, m, 2, 0).unwrap()
        }
        4 => {
            let m = Mapping::bd_diag(Field::new(8).unwrap(), 2, 256).unwrap();
            Scheme::new(Family::General, m, 2, 0).unwrap()
        }
        _ => {
            let m = Mapping::block_h2(Field::new(8).unwrap(), 4, 100).unwrap();
            Scheme::new(Family::General, m, 4, 0).unwrap()
        }
    }
}

fn set_in(scheme: &Scheme, seeds: &[u64]) -> Vec<u64> {
    let (lo, hi) = scheme.universe();
    let mut set: Vec<u64> = seeds.iter().map(|s| lo + s % (hi - lo + 1)).collect();
    set.sort_unstable();
    set.dedup();
    set
}

proptest! {
    #[test]
    fn field_axioms_hold(r in prop::sample::select(vec![4u32, 8, 12, 20]), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = Field::new(r).unwrap();
        let (a, b, c) = (a % f.size(), b % f.size(), c % f.size());
        prop_assert_eq!(f.mul_raw(a, b), f.mul_raw(b, a));
        prop_assert_eq!(f.mul_raw(f.mul_raw(a, b), c), f.mul_raw(a, f.mul_raw(b, c)));
        prop_assert_eq!(f.mul_raw(a, b ^ c), f.mul_raw(a, b) ^ f.mul_raw(a, c));
        prop_assert_eq!(f.pow_raw(a, 2), f.mul_raw(a, a));
        if a != 0 {
            prop_assert_eq!(f.mul_raw(a, f.inv_raw(a)), 1);
        }
    }

    #[test]
    fn inserts_then_deletes_drain(idx in 0usize..6, seeds in prop::collection::vec(any::<u64>(), 0..8), order in any::<u64>()) {
        let scheme = any_scheme(idx);
        let set = set_in(&scheme, &seeds);
        let mut table = scheme.new_table();
        for &u in &set {
            scheme.insert(&mut table, u).unwrap();
        }
        let mut deletions = set.clone();
        if order % 2 == 0 {
            deletions.reverse();
        }
        for u in deletions {
            scheme.delete(&mut table, u).unwrap();
        }
        prop_assert!(table.is_zero());
    }

    #[test]
    fn state_is_linear_in_symmetric_difference(s1 in prop::collection::btree_set(1u64..=255, 0..4), s2 in prop::collection::btree_set(1u64..=255, 0..4)) {
        let m = Mapping::bch_gf(Field::new(8).unwrap(), 3).unwrap();
        let scheme = Scheme::new(Family::General, m, 3, 0).unwrap();
        let sym: Vec<u64> = s1.symmetric_difference(&s2).copied().collect();
        let ta = scheme.canonical_bytes(&scheme.state_of(s1.iter().copied()).unwrap());
        let tb = scheme.canonical_bytes(&scheme.state_of(s2.iter().copied()).unwrap());
        let ts = scheme.canonical_bytes(&scheme.state_of(sym).unwrap());
        let xored: Vec<u8> = ta.iter().zip(&tb).map(|(x, y)| x ^ y).collect();
        prop_assert_eq!(ts, xored);
    }

    #[test]
    fn tables_round_trip_through_bytes(idx in 0usize..6, seeds in prop::collection::vec(any::<u64>(), 0..6)) {
        let scheme = any_scheme(idx);
        let set = set_in(&scheme, &seeds);
        let table = scheme.state_of(set).unwrap();
        let bytes = scheme.canonical_bytes(&table);
        prop_assert_eq!(scheme.table_from_bytes(&bytes).unwrap(), table);
    }

    #[test]
    fn configs_round_trip_as_json(n in 1u64..1000, d in 1u32..6, k in prop::option::of(1u32..6), r in prop::option::of(2u32..16), counter_bits in prop::option::of(0u32..4), poly in prop::option::of(any::<u64>())) {
        let cfg = SchemeConfigFile {
            version: 1,
            family: "standard-indel".into(),
            construction: "all-cols+1".into(),
            n, d, k, r, counter_bits, poly,
        };
        let parsed = SchemeConfigFile::from_json(&cfg.to_json()).unwrap();
        prop_assert_eq!(parsed, cfg);
    }

    #[test]
    fn extended_peel_extends_peel(seeds in prop::collection::vec(any::<u64>(), 0..7)) {
        // wherever plain peeling succeeds, extended peeling agrees, even
        // above the design threshold
        let scheme = any_scheme(1);
        let set = set_in(&scheme, &seeds);
        let table = scheme.state_of(set).unwrap();
        if let Some(listed) = peel(&scheme, &table).unwrap().success() {
            let extended = extended_peel(&scheme, &table).unwrap();
            prop_assert_eq!(extended.success(), Some(listed));
        }
    }

    #[test]
    fn successful_listings_reencode(seeds in prop::collection::vec(any::<u64>(), 0..7)) {
        // soundness even above the design threshold: whatever a listing
        // reports must rebuild the exact table
        for idx in [1usize, 2] {
            let scheme = any_scheme(idx);
            let set = set_in(&scheme, &seeds);
            let table = scheme.state_of(set).unwrap();
            if let Some(listed) = extended_peel(&scheme, &table).unwrap().success() {
                prop_assert_eq!(scheme.state_of(listed.iter().copied()).unwrap(), table);
            }
        }
    }

    #[test]
    fn garbage_tables_never_yield_unsound_listings(idx in 0usize..6, bytes in prop::collection::vec(any::<u8>(), 0..64)) {
        // arbitrary cell contents (not reachable by the protocol) must be
        // either decoded to a set that rebuilds them exactly, or rejected
        use iblt::listing::{list_d3_onebit, list_k1_bd, pgz_decode};
        use iblt::matrices::Construction;
        let scheme = any_scheme(idx);
        let want = (scheme.size_bits() as usize).div_ceil(8);
        let mut raw: Vec<u8> = bytes.iter().copied().cycle().take(want).collect();
        if raw.is_empty() {
            raw = vec![0; want];
        }
        // zero the padding bits so the bytes parse
        let pad = want * 8 - scheme.size_bits() as usize;
        if pad > 0 {
            let last = raw.last_mut().unwrap();
            *last &= 0xffu8 << pad;
        }
        let table = scheme.table_from_bytes(&raw).unwrap();
        let outcomes = match scheme.construction() {
            Construction::BchGf => vec![pgz_decode(&scheme, &table).unwrap()],
            Construction::BdDiag => vec![list_k1_bd(&scheme, &table).unwrap()],
            Construction::H2 => vec![],
            _ => {
                let mut v = vec![peel(&scheme, &table).unwrap(), extended_peel(&scheme, &table).unwrap()];
                if scheme.counter_bits() == 1 {
                    v.push(list_d3_onebit(&scheme, &table).unwrap());
                }
                v
            }
        };
        for outcome in outcomes {
            if let Some(set) = outcome.success() {
                let rebuilt = scheme.state_of(set.iter().copied()).unwrap();
                prop_assert_eq!(&rebuilt, &table);
            }
        }
    }

    #[test]
    fn listing_is_deterministic(idx in 0usize..3, seeds in prop::collection::vec(any::<u64>(), 0..5)) {
        let scheme = any_scheme(idx);
        let set = set_in(&scheme, &seeds);
        let table = scheme.state_of(set).unwrap();
        let a = extended_peel(&scheme, &table).unwrap();
        let b = extended_peel(&scheme, &table).unwrap();
        prop_assert_eq!(a, b);
    }
}
