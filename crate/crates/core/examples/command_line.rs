//! Driving the command-line front end in process, with a scratch cache.
//!
//! cargo run --example command_line

fn main() {
    let dir = std::env::temp_dir().join(format!("affkl-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cache = dir.join("kl.jsonl");
    std::env::set_var(affkl::cli::CACHE_ENV, &cache);
    let runs: [&[&str]; 5] = [
        &["affkl", "kl", "--type", "A3", "--x", "2", "--y", "2,1,3,2"],
        &["affkl", "kl", "--type", "A3", "--x", "2", "--y", "2,1,3,2"],
        &["affkl", "koszul-check", "--type", "A1~", "--w", "0,1,0"],
        &["affkl", "hilbert", "--type", "A2", "--mu", "1", "--w", "1,2", "--sign", "plus", "--format", "latex"],
        &["affkl", "crdaha-block", "--e", "2", "--nu", "2,1", "--lambda", "2,1|1"],
    ];
    for args in runs {
        println!("$ {}", args[1..].join(" "));
        let code = affkl::cli::run(args.iter().copied());
        println!("[exit {code}]");
    }
    println!("cache:\n{}", std::fs::read_to_string(&cache).unwrap_or_default());
    std::fs::remove_dir_all(&dir).ok();
}
