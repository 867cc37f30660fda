//! Report writers. All numeric cells use 17-significant-digit scientific
//! rendering and fixed column orders, so identical runs produce
//! byte-identical files.

use std::io::Write;
use std::path::Path;

use gtep_core::instance::Instance;
use gtep_core::planner::{ExpansionPlan, PlanRun};
use gtep_core::report::{dispatch_records, DispatchRecord};
use gtep_milp::lp_format::export_lp;
use gtep_milp::mps::export_mps;
use gtep_milp::Model;

fn full(v: f64) -> String {
    format!("{:.16e}", v)
}

pub fn write_plan_json(dir: &Path, plan: &ExpansionPlan) -> std::io::Result<()> {
    let mut file = std::fs::File::create(dir.join("plan.json"))?;
    serde_json::to_writer_pretty(&mut file, plan)?;
    writeln!(file)
}

pub fn write_costs_csv(dir: &Path, plan: &ExpansionPlan) -> std::io::Result<()> {
    let mut file = std::fs::File::create(dir.join("costs.csv"))?;
    writeln!(
        file,
        "year,investment,generation,startup,violation,deficit,elastic_gain,total"
    )?;
    for y in &plan.years {
        writeln!(
            file,
            "{},{},{},{},{},{},{},{}",
            y.year,
            full(y.costs.investment),
            full(y.costs.generation),
            full(y.costs.startup),
            full(y.costs.violation),
            full(y.costs.deficit),
            full(y.costs.elastic_gain),
            full(y.costs.total),
        )?;
    }
    Ok(())
}

pub fn write_single_year_costs(
    dir: &Path,
    year: usize,
    costs: &gtep_core::report::YearCosts,
) -> std::io::Result<()> {
    let mut file = std::fs::File::create(dir.join("costs.csv"))?;
    writeln!(
        file,
        "year,investment,generation,startup,violation,deficit,elastic_gain,total"
    )?;
    writeln!(
        file,
        "{},{},{},{},{},{},{},{}",
        year,
        full(costs.investment),
        full(costs.generation),
        full(costs.startup),
        full(costs.violation),
        full(costs.deficit),
        full(costs.elastic_gain),
        full(costs.total),
    )
}

pub fn write_dispatch_csv(dir: &Path, instance: &Instance, run: &PlanRun) -> std::io::Result<()> {
    let mut records = Vec::new();
    for solved in &run.years {
        let view = gtep_core::formulation::YearView::for_year(
            instance,
            solved.year,
            solved.fixed.clone(),
        );
        records.extend(dispatch_records(&view, &solved.formulation, &solved.solution));
    }
    write_dispatch_records(dir, &records)
}

pub fn write_dispatch_records(dir: &Path, records: &[DispatchRecord]) -> std::io::Result<()> {
    let file = std::fs::File::create(dir.join("dispatch.csv"))?;
    let mut out = std::io::BufWriter::new(file);
    writeln!(out, "year,scenario,season,typical_day,hour,family,entity,value")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.year,
            r.scenario,
            r.season,
            r.typical_day.map_or(String::new(), |d| d.to_string()),
            r.hour.map_or(String::new(), |h| h.to_string()),
            r.family,
            r.entity,
            full(r.value),
        )?;
    }
    out.flush()
}

pub fn write_model_files(dir: &Path, year: usize, model: &Model) -> std::io::Result<()> {
    std::fs::write(dir.join(format!("model_y{}.mps", year)), export_mps(model).text)?;
    std::fs::write(dir.join(format!("model_y{}.lp", year)), export_lp(model))
}

pub fn write_index_dump(
    dir: &Path,
    year: usize,
    formulation: &gtep_core::formulation::Formulation,
) -> std::io::Result<()> {
    let dump = formulation.index.to_json(&formulation.model);
    std::fs::write(
        dir.join(format!("index_y{}.json", year)),
        format!("{:#}\n", dump),
    )
}
