use gtep_core::formulation::{build_yearly_model, YearView};
use gtep_testkit::instances::*;
use gtep_solver::{solve_mip, SolveConfig};
use std::time::Instant;

fn main() {
    let cfg = SolveConfig::tight();
    for (label, opts) in [
        ("lean2", GenOptions::lean(2)),
        ("lean4", GenOptions::lean(4)),
        ("rich3", GenOptions::rich(3)),
        ("rich2td", { let mut o = GenOptions::rich(2); o.typical_days = 2; o }),
        ("rich2s", { let mut o = GenOptions::rich(2); o.scenarios = 2; o }),
    ] {
        let inst = random_instance(5, &opts);
        let view = YearView::single_year(&inst);
        let t0 = Instant::now();
        let f = build_yearly_model(&view).unwrap();
        let t_build = t0.elapsed();
        let t0 = Instant::now();
        let sol = solve_mip(&f.model, &cfg).unwrap();
        let t_mip = t0.elapsed();
        let t0 = Instant::now();
        let best = enumerate_single_year(&inst, 1, &Default::default(), &cfg);
        let t_enum = t0.elapsed();
        println!(
            "{}: {}x{} build {:?} mip {:?} ({} nodes, {} iters) enum {:?} objs {:?} vs {:?}",
            label, f.model.num_rows(), f.model.num_vars(), t_build, t_mip,
            sol.stats.nodes, sol.stats.simplex_iterations, t_enum,
            sol.objective, best.map(|b| b.0)
        );
    }
}
