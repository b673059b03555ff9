use insitu_sa::io::{decode, encode, OutputFormat};
use insitu_sa::ip_general::{suffix_sort_by, BranchMode, GeneralOptions};
use insitu_sa::ip_ro_int::{suffix_sort_readonly_with, OrientationMode, ReadonlyOptions};
use insitu_sa::text::{bwt, naive_suffix_array, verify_suffix_array};
use insitu_sa::{audit, ip_general, ip_int, ip_ro_int, merge, sais_ref, select};
use proptest::prelude::*;

fn text(max_sigma: usize, max_len: usize) -> impl Strategy<Value = (Vec<usize>, usize)> {
    (1..=max_sigma).prop_flat_map(move |sigma| {
        (prop::collection::vec(1..=sigma, 0..max_len), Just(sigma)).prop_map(|(mut t, s)| {
            t.push(0);
            (t, s)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn sais_matches_oracle((t, sigma) in text(8, 200)) {
        prop_assert_eq!(sais_ref::sais(&t, sigma), naive_suffix_array(&t));
    }

    #[test]
    fn ip_int_matches_oracle_and_restores((mut t, _) in text(8, 200)) {
        let sigma = insitu_sa::io::compact_alphabet(&mut t);
        prop_assume!(sigma < t.len());
        let mut w = t.clone();
        let mut sa = vec![0; t.len()];
        ip_int::suffix_sort_int(&mut w, &mut sa, sigma, true).unwrap();
        prop_assert_eq!(&sa, &naive_suffix_array(&t));
        prop_assert_eq!(w, t);
    }

    #[test]
    fn ip_ro_int_matches_oracle_in_every_orientation((t, sigma) in text(6, 200), m in 0..3usize) {
        let mode = [OrientationMode::Auto, OrientationMode::ForceLms, OrientationMode::ForceLml][m];
        let opts = ReadonlyOptions { orientation: mode, ..ReadonlyOptions::default() };
        let before = audit::checksum(&t);
        let mut sa = vec![0; t.len()];
        suffix_sort_readonly_with(&t, &mut sa, sigma, opts).unwrap();
        prop_assert_eq!(sa, naive_suffix_array(&t));
        prop_assert_eq!(audit::checksum(&t), before);
    }

    #[test]
    fn ip_general_matches_oracle_in_every_branch((t, _) in text(5, 200), m in 0..3usize) {
        let branch = [BranchMode::Auto, BranchMode::ForceS, BranchMode::ForceL][m];
        let mut sa = vec![0; t.len()];
        suffix_sort_by(&t[..], &mut sa, GeneralOptions { branch }).unwrap();
        prop_assert_eq!(sa, naive_suffix_array(&t));
    }

    #[test]
    fn general_accepts_sparse_symbols(raw in prop::collection::vec(1u64..u64::MAX, 0..100)) {
        let mut t = raw;
        t.push(0);
        let mut sa = vec![0; t.len()];
        ip_general::suffix_sort_general(&t, &mut sa).unwrap();
        prop_assert!(verify_suffix_array(&t, &sa).unwrap());
    }

    #[test]
    fn bwt_is_last_column((t, sigma) in text(4, 120)) {
        let n = t.len();
        let mut rot: Vec<usize> = (0..n).collect();
        rot.sort_by(|&a, &b| {
            (0..n).map(|k| t[(a + k) % n]).cmp((0..n).map(|k| t[(b + k) % n]))
        });
        let want: Vec<usize> = rot.iter().map(|&r| t[(r + n - 1) % n]).collect();
        let sa = sais_ref::sais(&t, sigma);
        prop_assert_eq!(bwt(&t, &sa).unwrap(), want);
    }

    #[test]
    fn stable_merge_is_stable(
        mut a in prop::collection::vec(0..10u32, 0..80),
        mut b in prop::collection::vec(0..10u32, 0..80),
    ) {
        a.sort();
        b.sort();
        let mid = a.len();
        let mut v: Vec<(u32, usize)> = a.iter().chain(b.iter()).copied().zip(0..).collect();
        let mut want = v.clone();
        want.sort_by_key(|p| p.0);
        merge::stable_merge(&mut v, mid, |x, y| x.0 < y.0);
        prop_assert_eq!(v, want);
    }

    #[test]
    fn rotate_matches_slice_rotate(v in prop::collection::vec(any::<u8>(), 0..60), x in any::<usize>(), y in any::<usize>()) {
        let n = v.len();
        let (mut a, mut c) = (x % (n + 1), y % (n + 1));
        if a > c { std::mem::swap(&mut a, &mut c); }
        let b = a + (x / 7) % (c - a + 1);
        let mut got = v.clone();
        merge::rotate(&mut got, a, b, c);
        let mut want = v;
        want[a..c].rotate_left(b - a);
        prop_assert_eq!(got, want);
    }

    #[test]
    fn select_matches_bitmap_walk(n in 1usize..20_000, density in 0.0f64..1.0, seed in any::<u64>()) {
        let mut state = seed | 1;
        let mut pos = Vec::new();
        for p in 0..n {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            if (state % 1000) as f64 / 1000.0 < density {
                pos.push(p);
            }
        }
        let idx = select::SelectIndex::build(n, &pos).unwrap();
        if n >= 1 << 11 {
            prop_assert!(idx.words() <= select::word_budget(n));
        }
        for (i, &p) in pos.iter().enumerate() {
            let (got, probes) = idx.view().select_probed(i);
            prop_assert_eq!(got, p);
            prop_assert!(probes <= select::MAX_PROBES);
        }
        prop_assert!(idx.select(pos.len()).is_err());
    }

    #[test]
    fn encode_decode_round_trip(v in prop::collection::vec(0usize..u32::MAX as usize, 0..50), f in 0..3usize, header in any::<bool>()) {
        let f = [OutputFormat::U32, OutputFormat::U64, OutputFormat::Text][f];
        prop_assert_eq!(decode(&encode(&v, f, header).unwrap(), f).unwrap(), v);
    }

    #[test]
    fn readonly_plan_picks_smaller_class((t, sigma) in text(6, 200)) {
        let plan = ip_ro_int::choose_orientation(&t, sigma).unwrap();
        let c = insitu_sa::text::count_types(&t);
        prop_assert_eq!((plan.n_l, plan.n_s), (c.n_l, c.n_s));
        prop_assert!(sigma <= plan.d * t.len());
        let want = if c.n_l <= c.n_s { ip_ro_int::Orientation::Lms } else { ip_ro_int::Orientation::Lml };
        prop_assert_eq!(plan.orientation, want);
        prop_assert!(plan.n1 <= t.len() / 2 + 1);
    }
}
