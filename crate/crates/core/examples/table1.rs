//! The full code-pair table as text and JSON.

use dimjump::report::{render_table1, table1, RunReport, Table1Options};

fn main() -> dimjump::Result<()> {
    let opts = Table1Options::default();
    let (rows, timings) = table1(&opts)?;
    print!("{}", render_table1(&rows));
    let report = RunReport::new("table1", format!("{opts:?}").as_bytes(), &rows[..1], timings);
    println!("{}", report.to_json()?);
    Ok(())
}
