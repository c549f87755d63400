//! Vertex decompositions and their witnesses.

use circulant_topology::circulant::build_circulant;
use circulant_topology::decomp::{is_vertex_decomposable, replay_witness, WitnessStep};
use circulant_topology::simplex::independence_complex;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for spec in ["6:2,3", "13:1,2,3,4,5", "12:1,3,6", "10:1,2,3,5", "16:1,4,8"] {
        let ind = independence_complex(&build_circulant(spec.parse()?));
        let verdict = is_vertex_decomposable(&ind)?;
        print!("{spec:<14} vertex decomposable: {:<5}", verdict.value);
        if let Some(w) = &verdict.witness {
            let sheds = w.iter().filter(|(_, s)| matches!(s, WitnessStep::Shed(_))).count();
            print!("  witness: {} steps, {sheds} sheds, replays: {}", w.len(), replay_witness(&ind, w));
            if let Some((_, WitnessStep::Shed(v))) = w.first() {
                print!(", first shedding vertex {v}");
            }
        }
        println!();
    }
    Ok(())
}
