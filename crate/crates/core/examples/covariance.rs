//! How each quantity transforms from the cylindrical to the Landau gauge,
//! checked on random states.

use ringgauge::operators::{covariance_ledger, Basis};
use ringgauge::FluxRatio;

fn main() -> ringgauge::Result<()> {
    for f in [0.25, 1.0 / 3.0, -2.5] {
        let r = covariance_ledger(FluxRatio::new(f), Basis::periodic(32), 256, 16, 7)?;
        println!("f = {f:+.4}");
        println!("  mechanical L invariant      {:.2e}", r.invariant_row);
        println!("  L_z shifts by f cos 2phi    {:.2e}", r.generator_row);
        println!("  <L_z> on mapped eigenstates {:.2e}", r.generator_eigenstate_row);
        println!("  H' = U H U^dagger (states)  {:.2e}", r.hamiltonian_row);
        println!("  H' = U H U^dagger (block)   {:.2e}", r.hamiltonian_matrix_interior);
        println!("  unitarity defect            {:.2e}", r.unitarity_defect);
    }
    Ok(())
}
