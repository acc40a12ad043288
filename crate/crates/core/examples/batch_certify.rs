//! Library use of the batch front end: JSON documents in, certificates out.
//!
//! ```bash
//! cargo run -p polya-bounds --example batch_certify
//! ```

use polya_bounds::cli::{run, Command, Format, Options};

fn main() {
    let docs = [
        r#"{"n": 2, "matrix": [["4", "-1"], ["-1", "1"]], "label": "tight"}"#,
        r#"{"n": 3, "matrix": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]], "label": "identity"}"#,
        r#"{"n": 2, "matrix": [["0", "1/2"], ["1/2", "0"]], "label": "x1*x2"}"#,
    ];
    let opts = Options { format: Format::Json, ..Options::default() };
    for doc in docs {
        for command in [Command::Bounds, Command::Exponent] {
            let out = run(command, &opts, Some(doc));
            println!("# {} -> exit {}", command.name(), out.exit_code);
            print!("{}", out.stdout);
            eprint!("{}", out.stderr);
        }
    }
}
