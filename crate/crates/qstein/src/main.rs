fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (code, output) = qstein::cli::run(&args, &mut std::io::stdin().lock());
    println!("{output}");
    std::process::exit(code);
}
