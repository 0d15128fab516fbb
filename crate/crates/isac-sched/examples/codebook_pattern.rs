//! Builds the Hamming-tapered codebook and prints its pattern figures.
//!
//! Run with: cargo run --release --example codebook_pattern

use isac_sched::codebook::{uniform_weights, Codebook};
use isac_sched::units::linear_to_db;

fn main() {
    let hamming = Codebook::hamming(29, 12).unwrap();
    let uniform = Codebook::new(uniform_weights(29).unwrap(), 12).unwrap();

    println!("29-element half-wavelength ULA, 12 look directions\n");
    for (name, cb) in [("hamming", &hamming), ("uniform", &uniform)] {
        println!(
            "{name:8} peak gain {:6.2} ({:5.2} dBi), HPBW {:5.2} deg, backlobe {:7.2} dB rel peak",
            cb.peak_gain(),
            linear_to_db(cb.peak_gain()),
            cb.half_power_beamwidth().to_degrees(),
            linear_to_db(cb.backlobe_floor() / cb.peak_gain()),
        );
    }

    println!("\nhamming pattern vs offset from boresight:");
    println!("{:>8} {:>10}", "offset", "gain dB");
    for deg in [0.0, 1.0, 2.0, 2.6, 5.0, 10.0, 15.0, 30.0, 45.0, 60.0, 75.0, 90.0, 135.0] {
        let g = hamming.offset_gain(f64::to_radians(deg));
        println!("{deg:7.1}\u{b0} {:10.2}", linear_to_db(g / hamming.peak_gain()));
    }

    println!("\nlook directions of the first beams:");
    for beam in hamming.beam_ids().take(4) {
        println!("  beam {beam:2} -> {:7.1} deg", hamming.look_dir(beam).to_degrees());
    }
    println!("  beam  0 is the null beamformer (silent dwell)");
}
