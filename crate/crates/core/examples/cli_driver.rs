//! Driving the command line from code, as the `sig` binary does.

use gamerun::cli::run_command;

fn main() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let path = |f: &str| format!("{data}/{f}");
    let commands: Vec<Vec<String>> = vec![
        vec!["run".into(), path("fixture_b.g"), path("fixture_b.m"), path("blur_ab.o")],
        vec!["tree".into(), path("fixture_a.g"), "--root".into(), "s".into(), "--depth".into(), "1".into()],
        vec![
            "eval".into(),
            path("fixture_a_win.g"),
            path("fixture_a_win.m"),
            path("identity.o"),
            "--formula".into(),
            "[a] K2 [c] win@2".into(),
        ],
        vec!["normal".into(), path("det.etl"), path("identity.o")],
    ];
    for args in commands {
        let out = run_command(std::iter::once("sig".to_string()).chain(args.iter().cloned()));
        println!("$ sig {} -> exit {}", args[0], out.code);
        print!("{}{}", out.stdout, out.stderr);
    }
}
