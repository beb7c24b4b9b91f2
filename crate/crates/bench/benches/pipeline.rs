use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tagmark::{
    apply_attack, chaos_seed, decode_key, embed, encode_key, extract, initialize_cover, psnr,
    select_positions, verify, AttackKind, AttackSpec, GrayImage,
};

fn random_image(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> GrayImage {
    let mut px = vec![0u8; rows * cols];
    rng.fill(px.as_mut_slice());
    GrayImage::new(rows, cols, px).unwrap()
}

fn chaos(c: &mut Criterion) {
    c.bench_function("chaos/10k_steps", |b| {
        let seed = chaos_seed(b"bench").unwrap();
        b.iter(|| {
            let mut state = seed;
            for _ in 0..10_000 {
                let (x, y, next) = state.step().unwrap();
                black_box((x, y));
                state = next;
            }
        })
    });
}

fn pipeline(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let cover = random_image(&mut rng, 512, 512);
    let mut group = c.benchmark_group("embed_512");
    for side in [16usize, 64, 256] {
        let tag = random_image(&mut rng, side, side);
        group.bench_with_input(BenchmarkId::from_parameter(side), &tag, |b, tag| {
            b.iter(|| embed(black_box(&cover), tag, b"bench").unwrap())
        });
    }
    group.finish();

    let tag = random_image(&mut rng, 64, 64);
    let (watermarked, record) = embed(&cover, &tag, b"bench").unwrap();
    let init = initialize_cover(&cover);

    c.bench_function("select_positions/512_64", |b| {
        let seed = chaos_seed(b"bench").unwrap();
        b.iter(|| select_positions(&init, (64, 64), seed).unwrap())
    });
    c.bench_function("extract/512_64", |b| {
        b.iter(|| extract(&watermarked, &record).unwrap())
    });
    c.bench_function("verify/512_64", |b| {
        b.iter(|| verify(&watermarked, &record, None).unwrap())
    });
    c.bench_function("psnr/512", |b| {
        b.iter(|| psnr(&cover, &watermarked).unwrap())
    });
    c.bench_function("salt_pepper/512", |b| {
        let spec = AttackSpec::new(AttackKind::SaltPepper { density: 0.05 }, 1);
        b.iter(|| apply_attack(&watermarked, &spec).unwrap())
    });

    let bytes = encode_key(&record).unwrap();
    c.bench_function("keyfile/decode_4096", |b| {
        b.iter(|| decode_key(black_box(&bytes)).unwrap())
    });
}

criterion_group!(benches, chaos, pipeline);
criterion_main!(benches);
