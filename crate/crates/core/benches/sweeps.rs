use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hfzf::selftest::{self, Ctx};
use hfzf::sweep::Exec;

/// Criteria whose sweeps are large enough for the thread pool to matter.
const CRITERIA: &[(u8, &str)] = &[(3, "closures"), (5, "wfrec"), (10, "soundness")];

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweeps");
    group.sample_size(10);
    for &(n, name) in CRITERIA {
        for (exec, label) in [
            (Exec::Sequential, "sequential"),
            (Exec::Parallel, "parallel"),
        ] {
            let ctx = Ctx { seed: 1, exec };
            group.bench_with_input(BenchmarkId::new(name, label), &ctx, |b, ctx| {
                b.iter(|| {
                    let o = selftest::criterion(n, ctx);
                    assert!(o.passed());
                    o.cases
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
