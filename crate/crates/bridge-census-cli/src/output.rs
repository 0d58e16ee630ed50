//! Rendering of count tables and statistics rows as aligned text, CSV and
//! JSON.
//!
//! Conventions, shared by every emitter here: CSV uses a header row, comma
//! separators, LF line endings and plain decimal integers; JSON carries
//! every exact value as a decimal string so nothing is rounded through a
//! float; the text format blanks out zero cells the way the published
//! triangular tables do. Decimal columns are display-only 12-significant-
//! digit renderings of the exact rationals.

use bridge_census::formulas::{count_row, max_braid, summary, DomainError};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    K,
    E,
    Ep,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::K => "k",
            Quantity::E => "e",
            Quantity::Ep => "ep",
        }
    }

    /// Header of the trailing totals column; the knot table has none.
    fn total_label(self) -> Option<&'static str> {
        match self {
            Quantity::K => None,
            Quantity::E => Some("e(c)"),
            Quantity::Ep => Some("e_p(c)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// JSON document for a count table; field order is the canonical
/// serialization, so parse + re-emit is byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableDoc {
    pub quantity: String,
    pub c_min: i64,
    pub c_max: i64,
    pub braid_indices: Vec<i64>,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub c: i64,
    pub counts: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub total: Option<String>,
}

fn table_doc(quantity: Quantity, c_min: i64, c_max: i64) -> Result<TableDoc, DomainError> {
    let braid_indices: Vec<i64> = (2..=max_braid(c_max)).collect();
    let mut rows = Vec::new();
    for c in c_min..=c_max {
        let mut counts = vec![BigUint::zero(); braid_indices.len()];
        for entry in count_row(c)? {
            let value = match quantity {
                Quantity::K => entry.k(),
                Quantity::E => entry.e.clone(),
                Quantity::Ep => entry.ep.clone(),
            };
            counts[(entry.b - 2) as usize] = value;
        }
        let total = quantity.total_label().map(|_| {
            counts.iter().sum::<BigUint>().to_string()
        });
        rows.push(TableRow {
            c,
            counts: counts.iter().map(BigUint::to_string).collect(),
            total,
        });
    }
    Ok(TableDoc {
        quantity: quantity.name().to_string(),
        c_min,
        c_max,
        braid_indices,
        rows,
    })
}

/// Renders one triangular count table. Zero cells print as 0 in CSV and
/// JSON and as blanks in the text table.
pub fn render_table(
    quantity: Quantity,
    c_min: i64,
    c_max: i64,
    format: Format,
) -> Result<String, DomainError> {
    let doc = table_doc(quantity, c_min, c_max)?;
    Ok(match format {
        Format::Json => render_json(&doc),
        Format::Csv => render_table_csv(quantity, &doc),
        Format::Table => render_table_text(quantity, &doc),
    })
}

fn render_json<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string(doc).expect("table serialization cannot fail");
    out.push('\n');
    out
}

fn render_table_csv(quantity: Quantity, doc: &TableDoc) -> String {
    let mut out = String::from("c");
    for b in &doc.braid_indices {
        out.push_str(&format!(",{b}"));
    }
    if let Some(label) = quantity.total_label() {
        out.push_str(&format!(",{label}"));
    }
    out.push('\n');
    for row in &doc.rows {
        out.push_str(&row.c.to_string());
        for value in &row.counts {
            out.push_str(&format!(",{value}"));
        }
        if let Some(total) = &row.total {
            out.push_str(&format!(",{total}"));
        }
        out.push('\n');
    }
    out
}

fn render_table_text(quantity: Quantity, doc: &TableDoc) -> String {
    let mut header: Vec<String> = vec!["c\\b".to_string()];
    header.extend(doc.braid_indices.iter().map(|b| b.to_string()));
    if let Some(label) = quantity.total_label() {
        header.push(label.to_string());
    }
    let mut grid = vec![header];
    for row in &doc.rows {
        let mut cells = vec![row.c.to_string()];
        cells.extend(
            row.counts
                .iter()
                .map(|v| if v == "0" { String::new() } else { v.clone() }),
        );
        if let Some(total) = &row.total {
            cells.push(total.clone());
        }
        grid.push(cells);
    }
    align_grid(&grid)
}

fn align_grid(grid: &[Vec<String>]) -> String {
    let columns = grid.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|i| grid.iter().filter_map(|row| row.get(i)).map(String::len).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in grid {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(&" ".repeat(widths[i] - cell.len()));
            line.push_str(cell);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// JSON document for the statistics table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsDoc {
    pub c_min: i64,
    pub c_max: i64,
    pub rows: Vec<StatsRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsRow {
    pub c: i64,
    pub knots: String,
    pub mean: String,
    pub mean_decimal: String,
    pub variance: String,
    pub variance_decimal: String,
    pub mode: i64,
    pub median: String,
}

fn stats_doc(c_min: i64, c_max: i64) -> Result<StatsDoc, DomainError> {
    let mut rows = Vec::new();
    for c in c_min..=c_max {
        let s = summary(c)?;
        rows.push(StatsRow {
            c,
            knots: s.knots.to_string(),
            mean: s.mean.to_string(),
            mean_decimal: decimal_12(&s.mean),
            variance: s.variance.to_string(),
            variance_decimal: decimal_12(&s.variance),
            mode: s.mode,
            median: s.median.to_string(),
        });
    }
    Ok(StatsDoc { c_min, c_max, rows })
}

const STATS_HEADER: [&str; 8] = [
    "c",
    "knots",
    "mean",
    "mean_decimal",
    "variance",
    "variance_decimal",
    "mode",
    "median",
];

/// Renders one distribution-statistics row per crossing number.
pub fn render_stats(c_min: i64, c_max: i64, format: Format) -> Result<String, DomainError> {
    let doc = stats_doc(c_min, c_max)?;
    Ok(match format {
        Format::Json => render_json(&doc),
        Format::Csv => {
            let mut out = STATS_HEADER.join(",");
            out.push('\n');
            for row in &doc.rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    row.c,
                    row.knots,
                    row.mean,
                    row.mean_decimal,
                    row.variance,
                    row.variance_decimal,
                    row.mode,
                    row.median
                ));
            }
            out
        }
        Format::Table => {
            let mut grid = vec![STATS_HEADER.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
            for row in &doc.rows {
                grid.push(vec![
                    row.c.to_string(),
                    row.knots.clone(),
                    row.mean.clone(),
                    row.mean_decimal.clone(),
                    row.variance.clone(),
                    row.variance_decimal.clone(),
                    row.mode.to_string(),
                    row.median.clone(),
                ]);
            }
            align_grid(&grid)
        }
    })
}

/// Formats an exact rational with 12 significant digits, round half up.
/// Display-only; nothing downstream consumes these.
pub fn decimal_12(value: &BigRational) -> String {
    const DIGITS: u32 = 12;
    if value.is_zero() {
        return "0".to_string();
    }
    let sign = if value.is_negative() { "-" } else { "" };
    let numer = value.numer().abs().into_parts().1;
    let denom = value.denom().abs().into_parts().1;

    // decimal exponent: the unique exp with 10^exp <= |value| < 10^(exp+1);
    // the digit-count guess is off by at most one, fixed by comparison
    let ten = BigUint::from(10u32);
    let mut exp = numer.to_string().len() as i64 - denom.to_string().len() as i64;
    while pow10_cmp(&numer, &denom, exp + 1) {
        exp += 1;
    }
    while !pow10_cmp(&numer, &denom, exp) {
        exp -= 1;
    }

    // scale so the quotient has exactly DIGITS digits, then round half up
    let shift = DIGITS as i64 - 1 - exp;
    let (scaled_numer, scaled_denom) = if shift >= 0 {
        (&numer * ten.pow(shift as u32), denom.clone())
    } else {
        (numer.clone(), &denom * ten.pow((-shift) as u32))
    };
    let mut quotient = &scaled_numer / &scaled_denom;
    let remainder = &scaled_numer % &scaled_denom;
    if &remainder * 2u32 >= scaled_denom {
        quotient += 1u32;
    }
    let mut digits = quotient.to_string();
    if digits.len() as u32 > DIGITS {
        // rounding carried into a new leading digit; drop the trailing zero
        digits.truncate(DIGITS as usize);
        exp += 1;
    }

    let body = if exp >= DIGITS as i64 - 1 {
        let mut s = digits;
        s.push_str(&"0".repeat((exp - (DIGITS as i64 - 1)) as usize));
        s
    } else if exp >= 0 {
        let point = (exp + 1) as usize;
        format!("{}.{}", &digits[..point], &digits[point..])
    } else {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    };
    format!("{sign}{body}")
}

/// true iff |value| >= 10^exp, i.e. numer >= denom * 10^exp
fn pow10_cmp(numer: &BigUint, denom: &BigUint, exp: i64) -> bool {
    let ten = BigUint::from(10u32);
    if exp >= 0 {
        *numer >= denom * ten.pow(exp as u32)
    } else {
        numer * ten.pow((-exp) as u32) >= *denom
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn decimal_12_spot_values() {
        assert_eq!(decimal_12(&rational(2, 1)), "2.00000000000");
        assert_eq!(decimal_12(&rational(1, 2)), "0.500000000000");
        assert_eq!(decimal_12(&rational(1, 3)), "0.333333333333");
        assert_eq!(decimal_12(&rational(2, 3)), "0.666666666667");
        assert_eq!(decimal_12(&rational(461, 88)), "5.23863636364");
        assert_eq!(decimal_12(&rational(10, 3)), "3.33333333333");
        assert_eq!(decimal_12(&rational(-1, 4)), "-0.250000000000");
        assert_eq!(decimal_12(&rational(0, 1)), "0");
        assert_eq!(decimal_12(&rational(1, 1000)), "0.00100000000000");
        assert_eq!(decimal_12(&rational(999999999999999, 1)), "1000000000000000");
    }

    #[test]
    fn csv_table_rows_match_published_values() {
        let out = render_table(Quantity::E, 3, 12, Format::Csv).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "c,2,3,4,5,6,7,e(c)");
        assert_eq!(lines[10], "12,0,18,112,280,240,32,682");
        let out = render_table(Quantity::Ep, 3, 12, Format::Csv).unwrap();
        assert_eq!(out.lines().last().unwrap(), "12,0,2,0,12,0,8,22");
    }

    #[test]
    fn text_table_blanks_zeros() {
        let out = render_table(Quantity::K, 3, 6, Format::Table).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0].split_whitespace().collect::<Vec<_>>(), ["c\\b", "2", "3", "4"]);
        assert_eq!(lines[1].split_whitespace().collect::<Vec<_>>(), ["3", "1"]);
        assert_eq!(lines[4].split_whitespace().collect::<Vec<_>>(), ["6", "2", "1"]);
    }

    #[test]
    fn json_round_trips_byte_identical() {
        let out = render_table(Quantity::Ep, 3, 12, Format::Json).unwrap();
        let doc: TableDoc = serde_json::from_str(&out).unwrap();
        assert_eq!(render_json(&doc), out);

        let out = render_stats(3, 10, Format::Json).unwrap();
        let doc: StatsDoc = serde_json::from_str(&out).unwrap();
        assert_eq!(render_json(&doc), out);
    }

    #[test]
    fn stats_rows_match_hand_computed_values() {
        let out = render_stats(3, 8, Format::Csv).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(
            lines[1],
            "3,1,2,2.00000000000,0,0,2,2"
        );
        assert_eq!(
            lines[2],
            "4,1,3,3.00000000000,0,0,3,3"
        );
        // the degenerate row: two knots, tied counts, half-integer median
        assert_eq!(
            lines[3],
            "5,2,5/2,2.50000000000,1/4,0.250000000000,3,5/2"
        );
        assert_eq!(
            lines[6],
            "8,12,4,4.00000000000,1/2,0.500000000000,4,4"
        );
    }
}
