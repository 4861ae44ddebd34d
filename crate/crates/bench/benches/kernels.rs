use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use shufflerep_core::characters::CharacterTable;
use shufflerep_core::parabolic::class_ratio;
use shufflerep_core::rsk::rsk_shape;
use shufflerep_core::shuffles::{convolution_powers, stream_rng, ShuffleSampler};
use shufflerep_core::{Composition, Partition, Permutation, Rational, ShuffleSpec};

fn character_tables(c: &mut Criterion) {
    for n in [8, 10, 12] {
        c.bench_function(&format!("character_table/n={n}"), |b| {
            b.iter(|| CharacterTable::build(black_box(n)).unwrap())
        });
    }
}

fn convolution(c: &mut Criterion) {
    let mut group = c.benchmark_group("convolution_powers");
    group.sample_size(10);
    for n in [6, 7] {
        let spec = ShuffleSpec::top_to_random(n).unwrap();
        group.bench_function(format!("exact/top/n={n}/r=10"), |b| {
            b.iter(|| convolution_powers::<Rational>(black_box(&spec), 10).unwrap())
        });
        group.bench_function(format!("float/top/n={n}/r=10"), |b| {
            b.iter(|| convolution_powers::<f64>(black_box(&spec), 10).unwrap())
        });
    }
    group.finish();
}

fn rsk(c: &mut Criterion) {
    let sampler = ShuffleSampler::new(&ShuffleSpec::top_to_random(52).unwrap());
    let mut rng = stream_rng(1, 0);
    let perms: Vec<Permutation> = (0..256)
        .map(|_| sampler.sample_product(&mut rng, 200))
        .collect();
    c.bench_function("rsk_shape/n=52/256 permutations", |b| {
        b.iter(|| {
            perms
                .iter()
                .map(|g| rsk_shape(black_box(g)).part(0))
                .sum::<usize>()
        })
    });
    c.bench_function("sample_product/n=20/r=100", |b| {
        let sampler = ShuffleSampler::new(&ShuffleSpec::top_to_random(20).unwrap());
        let mut rng = stream_rng(2, 0);
        b.iter(|| sampler.sample_product(&mut rng, black_box(100)))
    });
}

fn class_ratios(c: &mut Criterion) {
    let mu = Composition::new(vec![3, 3, 2, 2]).unwrap();
    let nus = shufflerep_core::partitions::enumerate_partitions(10);
    c.bench_function("class_ratio/mu=3,3,2,2/all classes", |b| {
        b.iter(|| {
            nus.iter()
                .map(|nu: &Partition| class_ratio(black_box(&mu), nu).unwrap())
                .collect::<Vec<_>>()
        })
    });
}

criterion_group!(benches, character_tables, convolution, rsk, class_ratios);
criterion_main!(benches);
