//! A parameter sweep through the command-line front end, as a program would
//! embed it. Rows come back in grid order whatever the thread count.

fn main() {
    let args = [
        "integrable", "sweep", "--model", "cubic-eps-plus", "--start", "1.7320508075688772,1",
        "--lambda", "0.5:2:4", "--theta", "0.3,0.5,0.7", "--T", "0.5",
    ];
    let mut out = Vec::new();
    let code = integrable::cli::run(args, &mut out, &mut std::io::stderr());
    let csv = String::from_utf8(out).expect("utf-8 output");
    for line in csv.lines() {
        let cells: Vec<&str> = line.split(',').collect();
        println!("{:>24} {:>24} {:>8} {:>24}", cells[0], cells[4], cells[5], cells[9]);
    }
    println!("exit code {code}");
}
