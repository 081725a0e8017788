//! Figure data for the binary-sum and correlated-noise examples, as CSV on stdout.

use keyregion::figures::{figure, FigureId};

fn main() -> keyregion::Result<()> {
    let fig6 = figure(FigureId::Fig6, Some([0.4, 0.2, 0.3]), Some(0.05))?;
    fig6.write_csv(std::io::stdout().lock())?;
    let fig9 = figure(FigureId::Fig9c, None, Some(0.1))?;
    println!("fig9c series: {:?}, {} points", fig9.series_names(), fig9.points.len());
    Ok(())
}
