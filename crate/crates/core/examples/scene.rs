//! Load a scene file and run one command through the library, as the CLI does.
//!
//! `cargo run --example scene -- scenes/concentric.json dist`

use apollon::cli::{execute, Command, Options};
use apollon::scene::Scene;

fn main() {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/scenes/concentric.json").to_owned());
    let command = match args.next().as_deref().unwrap_or("dist") {
        "dist" => Command::Dist,
        "density" => Command::Density,
        "finsler" => Command::Finsler,
        "contract-check" => Command::ContractCheck,
        "birkhoff" => Command::Birkhoff,
        "ifs" => Command::Ifs,
        "render" => Command::Render,
        other => {
            eprintln!("unknown command {other}");
            std::process::exit(2);
        }
    };
    let scene = match Scene::from_path(std::path::Path::new(&path)) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    println!("scene {} sha256 {}", path, scene.hash);
    match execute(command, &Options::default(), &scene) {
        Ok(out) => {
            print!("{}", out.report);
            for (name, body) in &out.files {
                println!("(would write {name}: {} bytes)", body.len());
            }
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    }
}
