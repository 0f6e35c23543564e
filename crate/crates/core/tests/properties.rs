use proptest::prelude::*;

use qudit_color::netlist::{parse_netlist, serialize_netlist};
use qudit_color::state::{mixed_radix_decode, mixed_radix_encode};
use qudit_color::{Circuit, Control, GateKind, PlacedGate, StateVector};

fn kind_for(dim: usize) -> impl Strategy<Value = GateKind> {
    let d = dim as i64;
    prop_oneof![
        (-d..=d).prop_map(|power| GateKind::Not { power }),
        (-d..=d).prop_map(|power| GateKind::Phase { power }),
        any::<bool>().prop_map(|adjoint| GateKind::Hadamard { adjoint }),
        prop_oneof![Just(1i64), Just(-1i64)].prop_map(|step| GateKind::Increment { step }),
        Just(GateKind::Mct),
        Just((0..dim).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(GateKind::Permutation),
        proptest::collection::vec(-10.0f64..10.0, dim).prop_map(GateKind::DiagonalPhase),
    ]
}

fn circuit() -> impl Strategy<Value = Circuit> {
    (2usize..5, 2usize..5)
        .prop_flat_map(|(wires, dim)| {
            let gate = (0..wires, proptest::collection::vec((0..wires, 0..dim), 0..3), kind_for(dim))
                .prop_map(move |(target, ctrls, kind)| {
                    let mut seen = vec![target];
                    let mut controls = Vec::new();
                    for (w, v) in ctrls {
                        if !seen.contains(&w) {
                            seen.push(w);
                            controls.push(Control::new(w, v));
                        }
                    }
                    PlacedGate::controlled(kind, target, controls)
                });
            (Just(wires), Just(dim), proptest::collection::vec(gate, 0..12))
        })
        .prop_map(|(wires, dim, gates)| {
            let mut c = Circuit::uniform(wires, dim).unwrap();
            c.extend(gates).unwrap();
            c
        })
}

proptest! {
    #[test]
    fn netlist_round_trip(c in circuit()) {
        let text = serialize_netlist(&c);
        let back = parse_netlist(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(serialize_netlist(&back), text);
    }

    #[test]
    fn encode_decode(dims in proptest::collection::vec(2usize..7, 1..6), seed in any::<u64>()) {
        let size: usize = dims.iter().product();
        let idx = (seed % size as u64) as usize;
        let digits = mixed_radix_decode(idx, &dims).unwrap();
        prop_assert_eq!(mixed_radix_encode(&digits, &dims).unwrap(), idx);
    }

    #[test]
    fn norm_preserved_and_inverse_restores(c in circuit()) {
        let dims = c.dims().to_vec();
        let mut s = StateVector::zero(&dims).unwrap();
        for w in 0..dims.len() {
            s.apply(&PlacedGate::new(GateKind::Hadamard { adjoint: false }, w)).unwrap();
        }
        let start = s.clone();
        c.apply_to(&mut s).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
        c.invert().apply_to(&mut s).unwrap();
        prop_assert!((start.inner(&s).unwrap().norm() - 1.0).abs() < 1e-9);
    }
}
