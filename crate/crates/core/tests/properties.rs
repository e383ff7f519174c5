use anreduce::dynamics::{full_dynamics, limit_dynamics, Signature};
use anreduce::families::{
    build_double_cycle, build_tc, dc_reduce, recognize_tc, tc_fast_reduce, DcSpec,
};
use anreduce::graphs::Sign;
use anreduce::netlang::{
    emit_expression, emit_json, emit_network, parse_document, parse_network, NetworkDocument,
};
use anreduce::parallel::parallelize;
use anreduce::random::{random_block_sequential, random_network, random_tc_spec};
use anreduce::reduce::{reduce, reduce_tc, ReduceOptions};
use anreduce::{apply_block, AutomataNetwork, Configuration, Limits, UpdateSchedule};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sig(net: &AutomataNetwork, s: &UpdateSchedule) -> Signature {
    limit_dynamics(net, s, &Limits::default())
        .unwrap()
        .signature()
}

fn parallel_sig(net: &AutomataNetwork) -> Signature {
    sig(net, &UpdateSchedule::parallel(net.len()))
}

/// The same network with automata reordered by `perm` and renamed.
fn permuted(net: &AutomataNetwork, perm: &[usize]) -> AutomataNetwork {
    let fresh: Vec<String> = (0..net.len()).map(|i| format!("v{i}")).collect();
    let mut lines = vec![String::new(); net.len()];
    for (old, &new) in perm.iter().enumerate() {
        let renamed: Vec<String> = (0..net.len()).map(|i| fresh[perm[i]].clone()).collect();
        lines[new] = format!(
            "{} = {}",
            fresh[new],
            emit_expression(net.pool(), net.outputs()[old], &renamed)
        );
    }
    parse_network(&lines.join("\n")).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dsl_round_trip(seed: u64, n in 1usize..10) {
        let net = random_network(&mut ChaCha8Rng::seed_from_u64(seed), n, 4);
        let text = emit_network(&net);
        let back = parse_network(&text).unwrap();
        prop_assert_eq!(emit_network(&back), text);
        for k in 0..1u64 << n {
            let x = Configuration::from_index(n, k);
            prop_assert_eq!(back.step(&x).unwrap(), net.step(&x).unwrap());
        }
    }

    #[test]
    fn json_round_trip(seed: u64, n in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_network(&mut rng, n, 3);
        let doc = NetworkDocument { schedule: Some(random_block_sequential(&mut rng, n)), network: net };
        let back = parse_document(&emit_json(&doc)).unwrap();
        prop_assert_eq!(emit_network(&back.network), emit_network(&doc.network));
        prop_assert_eq!(back.schedule, doc.schedule);
    }

    #[test]
    fn signature_ignores_names_and_order(seed: u64, n in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_network(&mut rng, n, 3);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        prop_assert_eq!(parallel_sig(&permuted(&net, &perm)), parallel_sig(&net));
    }

    #[test]
    fn blocks_leave_other_automata_untouched(seed: u64, n in 1usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_network(&mut rng, n, 3);
        let mut block: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if block.is_empty() {
            block.push(rng.gen_range(0..n));
        }
        let x = Configuration::from_index(n, rng.gen_range(0..1u64 << n));
        let y = apply_block(&net, &block, &x).unwrap();
        for i in 0..n {
            let want = if block.contains(&i) { net.eval_local(i, &x).unwrap() } else { x.get(i) };
            prop_assert_eq!(y.get(i), want);
        }
    }

    #[test]
    fn parallelized_step_is_one_period(seed: u64, n in 1usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_network(&mut rng, n, 4);
        let s = random_block_sequential(&mut rng, n);
        let l = Limits::default();
        let p = parallelize(&net, &s, &l).unwrap();
        prop_assert_eq!(full_dynamics(&p, &UpdateSchedule::parallel(n), &l).unwrap(), full_dynamics(&net, &s, &l).unwrap());
    }

    #[test]
    fn reduction_keeps_signature(seed: u64, n in 1usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_network(&mut rng, n, 3);
        let s = random_block_sequential(&mut rng, n);
        let (out, report) = reduce(&net, &s, &Limits::default()).unwrap();
        prop_assert_eq!(out.len() + report.removed(), n);
        prop_assert_eq!(parallel_sig(&out), sig(&net, &s));
    }
}

#[test]
fn built_tcs_are_recognized() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let l = Limits::default();
    for _ in 0..200 {
        let spec = random_tc_spec(&mut rng, 4, 6, 3);
        let net = build_tc(&spec).unwrap();
        assert_eq!(net.len(), spec.network_size());
        let shape = recognize_tc(&net, &l)
            .unwrap()
            .unwrap_or_else(|| panic!("{spec}"));
        assert_eq!(shape.spec, spec.canonical(), "{spec}");
        let mut perm: Vec<usize> = (0..net.len()).collect();
        perm.shuffle(&mut rng);
        let shuffled = recognize_tc(&permuted(&net, &perm), &l).unwrap();
        assert_eq!(
            shuffled.map(|s| s.spec),
            Some(spec.canonical()),
            "{spec} shuffled"
        );
    }
}

#[test]
fn shape_preserving_reduction_keeps_signature() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let l = Limits::default();
    for _ in 0..150 {
        let spec = random_tc_spec(&mut rng, 3, 5, 2);
        let net = build_tc(&spec).unwrap();
        let s = random_block_sequential(&mut rng, net.len());
        let (out, _) = reduce_tc(&net, &s, &l, ReduceOptions::default()).unwrap();
        assert_eq!(parallel_sig(&out), sig(&net, &s), "{spec}");
    }
}

/// Wherever the shortened shape is well defined, building it gives the
/// same limit signature as running the original under its schedule.
#[test]
fn shortened_shape_predicts_signature() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let l = Limits::default();
    let mut checked = 0;
    for _ in 0..300 {
        let spec = random_tc_spec(&mut rng, 3, 5, 0);
        let net = build_tc(&spec).unwrap();
        let s = random_block_sequential(&mut rng, net.len());
        let Ok(short) = tc_fast_reduce(&spec, &s, &net, &l) else {
            continue;
        };
        if short.is_degenerate() {
            continue;
        }
        assert_eq!(
            parallel_sig(&build_tc(&short).unwrap()),
            sig(&net, &s),
            "{spec} -> {short}"
        );
        checked += 1;
    }
    assert!(checked > 100);
}

#[test]
fn double_cycle_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let l = Limits::default();
    for a in 1..=4 {
        for b in 1..=4 {
            for (s, s2) in [
                (Sign::Positive, Sign::Negative),
                (Sign::Negative, Sign::Negative),
            ] {
                let spec = DcSpec::new(s, s2, a, b).unwrap();
                let net = build_double_cycle(&spec).unwrap();
                for _ in 0..5 {
                    let d = random_block_sequential(&mut rng, net.len());
                    if let Ok(small) = dc_reduce(&spec, &d, &l) {
                        assert_eq!(
                            parallel_sig(&build_double_cycle(&small).unwrap()),
                            sig(&net, &d)
                        );
                    }
                }
            }
        }
    }
}

/// One pruning pass and pruning to a fixpoint both keep the signature;
/// on some schedules the fixpoint removes more.
#[test]
fn single_and_fixpoint_pruning_compared() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let l = Limits::default();
    let mut differ = 0;
    for _ in 0..300 {
        let spec = random_tc_spec(&mut rng, 3, 6, 2);
        let net = build_tc(&spec).unwrap();
        let s = random_block_sequential(&mut rng, net.len());
        let (once, _) = reduce_tc(&net, &s, &l, ReduceOptions::default()).unwrap();
        let fix = ReduceOptions {
            fixpoint_prune: true,
        };
        let (again, _) = reduce_tc(&net, &s, &l, fix).unwrap();
        assert!(again.len() <= once.len());
        assert_eq!(parallel_sig(&once), parallel_sig(&again), "{spec}");
        differ += usize::from(again.len() < once.len());
    }
    println!("fixpoint pruning removed more in {differ} of 300 cases");
    assert!(differ > 0);
}
