use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tagmark::{chaos_seed, map_unit_to_coord, ChaosState};

fn run(mut state: ChaosState, steps: usize) -> Vec<(f64, f64)> {
    (0..steps)
        .map(|_| {
            let (x, y, next) = state.step().expect("non-degenerate stream");
            state = next;
            (x, y)
        })
        .collect()
}

#[test]
fn ten_thousand_steps_replay_bit_identically() {
    let seed = chaos_seed(b"replay").unwrap();
    let a = run(seed, 10_000);
    let b = run(seed, 10_000);
    assert!(a
        .iter()
        .zip(&b)
        .all(|(p, q)| p.0.to_bits() == q.0.to_bits() && p.1.to_bits() == q.1.to_bits()));
}

#[test]
fn iterates_stay_inside_unit_interval() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..100 {
        let key: [u8; 16] = rng.gen();
        for (x, y) in run(chaos_seed(&key).unwrap(), 10_000) {
            assert!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn one_bit_of_key_changes_the_coordinate_stream(
        key in proptest::collection::vec(any::<u8>(), 1..32),
        bit in 0usize..256,
    ) {
        let mut flipped = key.clone();
        let bit = bit % (key.len() * 8);
        flipped[bit / 8] ^= 1 << (bit % 8);

        let coords = |k: &[u8]| -> Vec<(usize, usize)> {
            run(chaos_seed(k).unwrap(), 100)
                .into_iter()
                .map(|(x, y)| (map_unit_to_coord(x, 512).unwrap(), map_unit_to_coord(y, 512).unwrap()))
                .collect()
        };
        let a = coords(&key);
        let b = coords(&flipped);
        let differing = a.iter().zip(&b).filter(|(p, q)| p != q).count();
        prop_assert!(differing >= 90, "only {} of 100 differ", differing);
    }

    #[test]
    fn mapped_coordinates_are_in_range(u in 1e-300f64..1.0, extent in 2usize..5000) {
        prop_assert!(map_unit_to_coord(u, extent).unwrap() < extent);
    }
}
