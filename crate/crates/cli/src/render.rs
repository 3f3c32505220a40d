//! Text, CSV and JSON renderings of count triangles and class listings.

use chainisom::greens::{GreensClasses, SemigroupTable};
use chainisom::{CountTable, Family, Statistic};

fn symbol(stat: Statistic) -> &'static str {
    match stat {
        Statistic::Height => "p",
        Statistic::Fix => "m",
    }
}

fn family_symbol(fam: Family) -> &'static str {
    match fam {
        Family::Dp => "DP_n",
        Family::Odp => "ODP_n",
    }
}

/// Right-aligned columns `n\k 0 1 ... max sum`; cells above the diagonal
/// are blank.
pub fn table_text(t: &CountTable) -> String {
    let max_n = t.max_n();
    let corner = format!("n\\{}", symbol(t.statistic));
    let mut header: Vec<String> = vec![corner];
    header.extend((0..=max_n).map(|k| k.to_string()));
    header.push(format!("|{}|", family_symbol(t.family)));

    let mut grid: Vec<Vec<String>> = vec![header];
    for (n, row) in t.rows.iter().enumerate() {
        let mut line = vec![n.to_string()];
        line.extend((0..=max_n).map(|k| row.get(k).map(u64::to_string).unwrap_or_default()));
        line.push(t.row_sums[n].to_string());
        grid.push(line);
    }
    let cols = grid[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| grid.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();

    let mut out = format!(
        "F(n;{}) for {} by {}\n",
        symbol(t.statistic),
        family_symbol(t.family),
        t.statistic
    );
    for line in grid {
        let cells: Vec<String> = line
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(c, (cell, &w))| if c == 0 { format!("{cell:<w$}") } else { format!("{cell:>w$}") })
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// `n,k0,k1,...,sum` header, one row per n, blank cells above the diagonal.
pub fn table_csv(t: &CountTable) -> String {
    let max_n = t.max_n();
    let mut out = String::from("n");
    for k in 0..=max_n {
        out.push_str(&format!(",k{k}"));
    }
    out.push_str(",sum\n");
    for (n, row) in t.rows.iter().enumerate() {
        out.push_str(&n.to_string());
        for k in 0..=max_n {
            out.push(',');
            if let Some(v) = row.get(k) {
                out.push_str(&v.to_string());
            }
        }
        out.push_str(&format!(",{}\n", t.row_sums[n]));
    }
    out
}

pub fn table_json(t: &CountTable) -> String {
    serde_json::to_string(t).expect("count tables serialize") + "\n"
}

pub fn classes_text(classes: &GreensClasses, table: &SemigroupTable, title: &str) -> String {
    let mut out = format!("{title}: {} classes\n", classes.len());
    for (i, block) in classes.partition.iter().enumerate() {
        let members: Vec<String> = block.iter().map(|&e| table.element(e).to_string()).collect();
        out.push_str(&format!("class {i} (size {}): {}\n", block.len(), members.join(" ")));
    }
    out
}
