//! Parsing expressions in z, z⁻¹, t and evaluating them in `az+b`, as the
//! command-line tool does.

use qstein::cli::expr::parse;
use qstein::cli::{normalize_azb, run};
use qstein::scalar::QParam;

fn main() {
    let q: QParam = "1/2".parse().unwrap();
    for src in ["t*z", "(z + t)^2", "zinv*t*z", "(1/2+1/3*i)*t^3*zinv"] {
        let e = parse(src).expect("valid expression");
        let nf = normalize_azb(&q, &e).expect("azb expression");
        println!("{src:<22} parsed as {e:<22} = {nf:?}");
    }
    match parse("z^-1") {
        Ok(_) => unreachable!(),
        Err(err) => println!("z^-1: {err}"),
    }

    let args: Vec<String> = ["coproduct", "t^2", "--q", "1/2"].map(String::from).to_vec();
    let (code, out) = run(&args, &mut std::io::empty());
    println!("qstein {} -> exit {code}: {out}", args.join(" "));
}
