use absorbance_core::simulator::{Experiment, SimulationRun, WindowRecord};
use absorbance_core::Result;
use rayon::prelude::*;

/// Runs the windows of `exp` across threads. Each window owns its random
/// stream, so the result is identical to the sequential `simulator::run`.
pub fn run_parallel<E: Experiment + Sync>(exp: &E) -> Result<SimulationRun> {
    exp.validate()?;
    let records: Vec<WindowRecord> = (0..exp.n_windows()).into_par_iter().map(|i| exp.simulate_window(i)).collect();
    Ok(records.into_iter().collect())
}
