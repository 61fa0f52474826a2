//! Minimal end-to-end use of the library: one driven, decaying qubit pair.
//! This is the example shown in the README.

use qchain::{build_liouvillian, solve_steady_numeric, ArrayConfig, CouplingSpec};
use qchain::{concurrence, entanglement_of_formation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Γ = 1 > Γ_th = Ω²/(2J) = 1/3: decay strong enough to entangle the pair.
    let cfg = ArrayConfig::homogeneous(2, 1.0, 1.0, 0.0, CouplingSpec::Zz { j_parallel: 1.5 });
    let report = solve_steady_numeric(&build_liouvillian(&cfg)?)?;
    let c = concurrence(&report.state)?;
    let e = entanglement_of_formation(&report.state)?;
    println!("C = {c:.6}, EoF = {e:.6}, residual = {:.2e}", report.residual);
    Ok(())
}
