//! Subcommand implementations. Each returns the bytes to emit.

use std::path::Path;

use coauthor_core::blocks::{block_credit_matrix, partition_by_ranking};
use coauthor_core::corpus::descriptive_stats;
use coauthor_core::fitting::fit_table;
use coauthor_core::measures::{betweenness_centrality, degree_centrality, harmonic_closeness, indegree_prestige};
use coauthor_core::network::{build_directed_network, connected_components, density, symmetrize};
use coauthor_core::rank::{fractional_ranks_of, kendall_tau, parse_roster, roster_match};
use coauthor_core::{
    AuthorKey, BlockMode, CreditNetwork, CutSpec, Measure, ScoreVector, Scores, ShareTable, TauVariant,
};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::io::{read_corpus, read_network, read_scores, read_text, ScoreTable};
use crate::table::{Cell, Table};

pub fn fit(cfg: &RunConfig, empirical: &Path) -> CliResult<Vec<u8>> {
    let text = read_text(empirical)?;
    let shares = ShareTable::read_json(text.as_bytes()).map_err(|e| CliError::data(empirical.display(), e))?;
    let fits = fit_table(&shares, cfg.grid_step)?;
    let mut t = Table::new(["n", "d", "lof", "model_shares"]);
    for f in fits {
        let shares: Vec<String> = f.model_shares.as_slice().iter().map(|s| format!("{s}")).collect();
        t.push(vec![f.n_authors.into(), f.best_d.value().into(), f.lof.into(), shares.join(";").into()]);
    }
    Ok(t.render(cfg.format))
}

fn build_network(cfg: &RunConfig, corpus: &Path) -> CliResult<CreditNetwork> {
    let records = read_corpus(corpus)?;
    Ok(build_directed_network(&records, cfg.ordering, &cfg.factors, cfg.include_singles)?)
}

pub fn build(cfg: &RunConfig, corpus: &Path) -> CliResult<Vec<u8>> {
    let net = build_network(cfg, corpus)?;
    let mut out = Vec::new();
    net.write_json(&mut out)?;
    Ok(out)
}

pub fn stats(cfg: &RunConfig, corpus: &Path) -> CliResult<Vec<u8>> {
    let records = read_corpus(corpus)?;
    let s = descriptive_stats(&records, cfg.include_singles);
    let net = build_directed_network(&records, cfg.ordering, &cfg.factors, cfg.include_singles)?;
    let u = symmetrize(&net);
    let comps = connected_components(&u);

    let mut t = Table::new(["statistic", "value"]);
    let mut row = |k: &str, v: Cell| t.push(vec![k.into(), v]);
    row("paper_count", s.paper_count.into());
    for (n, c) in &s.size_histogram {
        row(&format!("papers_with_{n}_authors"), (*c).into());
    }
    row("unique_authors", s.unique_authors.into());
    row("avg_papers_per_author", s.avg_papers_per_author.into());
    row("sd_papers_per_author", s.sd_papers_per_author.into());
    row("avg_authors_per_paper", s.avg_authors_per_paper.into());
    row("sd_authors_per_paper", s.sd_authors_per_paper.into());
    row("avg_coauthors_per_author", s.avg_coauthors_per_author.into());
    row("sd_coauthors_per_author", s.sd_coauthors_per_author.into());
    row("edges", u.edge_count().into());
    row("components", comps.len().into());
    row("largest_component", comps.first().map_or(0, Vec::len).into());
    row("second_component", comps.get(1).map_or(0, Vec::len).into());
    row("density", density(&u).into());
    row("total_credit", net.total_credit().into());
    row("total_nc", net.total_nc().into());
    row("total_first_self", net.total_first_self().into());
    Ok(t.render(cfg.format))
}

fn compute(net: &CreditNetwork, measure: Measure, include_self: bool) -> Scores {
    match measure {
        Measure::Indegree => indegree_prestige(net, include_self),
        m => {
            let u = symmetrize(net);
            match m {
                Measure::Degree => degree_centrality(&u),
                Measure::Betweenness => betweenness_centrality(&u),
                _ => harmonic_closeness(&u),
            }
        }
    }
}

pub fn measures(cfg: &RunConfig, network: &Path, selected: Vec<Measure>, include_self: bool) -> CliResult<Vec<u8>> {
    let net = read_network(network)?;
    let scores: Vec<Scores> = selected.iter().map(|&m| compute(&net, m, include_self)).collect();
    let mut t = Table::new(std::iter::once("author".to_string()).chain(selected.iter().map(|m| m.to_string())));
    for (i, key) in net.nodes().iter().enumerate() {
        let mut row = vec![Cell::from(key.as_str())];
        row.extend(scores.iter().map(|s| Cell::from(s.scores[i])));
        t.push(row);
    }
    Ok(t.render(cfg.format))
}

pub fn rank(cfg: &RunConfig, scores: &Path, column: Option<&str>) -> CliResult<Vec<u8>> {
    let table = read_scores(scores)?;
    let (name, values) = table.column(column)?;
    let ranks = fractional_ranks_of(values);
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| ranks[a].total_cmp(&ranks[b]).then_with(|| table.authors[a].cmp(&table.authors[b])));
    let mut t = Table::new(["author".to_string(), name, "rank".to_string()]);
    for i in order {
        t.push(vec![table.authors[i].as_str().into(), values[i].into(), ranks[i].into()]);
    }
    Ok(t.render(cfg.format))
}

/// Joins the value columns of several score files on author.
fn join_columns(files: &[std::path::PathBuf]) -> CliResult<(Vec<String>, Vec<Vec<f64>>)> {
    let tables: Vec<ScoreTable> = files.iter().map(|f| read_scores(f)).collect::<CliResult<_>>()?;
    let reference = &tables[0].authors;
    let position: std::collections::HashMap<&AuthorKey, usize> =
        reference.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut names = Vec::new();
    let mut columns = Vec::new();
    for (file, table) in files.iter().zip(&tables) {
        if table.authors.len() != reference.len() || !table.authors.iter().all(|a| position.contains_key(a)) {
            return Err(CliError::data(file.display(), "authors differ from the first score file"));
        }
        for (name, values) in table.columns.iter().zip(&table.values) {
            let mut aligned = vec![0.0; reference.len()];
            for (a, v) in table.authors.iter().zip(values) {
                aligned[position[a]] = *v;
            }
            let label = if names.contains(name) { format!("{}:{name}", file.display()) } else { name.clone() };
            names.push(label);
            columns.push(aligned);
        }
    }
    Ok((names, columns))
}

pub fn correlate(cfg: &RunConfig, files: &[std::path::PathBuf], variant: TauVariant) -> CliResult<Vec<u8>> {
    let (names, columns) = join_columns(files)?;
    if columns.len() < 2 {
        return Err(CliError::Usage("need at least two score columns to correlate".into()));
    }
    let mut t = Table::new(["x", "y", "tau", "z", "significant"]);
    for i in 0..columns.len() {
        for j in i + 1..columns.len() {
            let r = kendall_tau(&columns[i], &columns[j], variant)?;
            let (tau, z, sig) = match r {
                Some(k) => (Some(k.tau), k.z, Cell::from(if k.significant() { "true" } else { "false" })),
                None => (None, None, Cell::Missing),
            };
            t.push(vec![names[i].clone().into(), names[j].clone().into(), tau.into(), z.into(), sig]);
        }
    }
    Ok(t.render(cfg.format))
}

pub fn blocks(cfg: &RunConfig, network: &Path, mode: BlockMode, spec: &CutSpec, basis: Measure) -> CliResult<Vec<u8>> {
    let net = read_network(network)?;
    let scores = compute(&net, basis, true);
    let counts = spec.resolve(net.node_count())?;
    let partition = partition_by_ranking(&scores, &counts)?;
    let matrix = block_credit_matrix(&net, &partition, mode)?;
    let b = matrix.block_count();
    let mut header = vec!["block".to_string(), "size".to_string()];
    header.extend((1..=b).map(|i| format!("Block{i}")));
    if matrix.diag_first_self.is_some() {
        header.push("first_self".into());
    }
    let mut t = Table::new(header);
    for s in 0..b {
        let mut row = vec![Cell::from(format!("Block{}", s + 1)), matrix.sizes[s].into()];
        row.extend(matrix.cells[s].iter().map(|&v| Cell::from(v)));
        if let Some(d) = &matrix.diag_first_self {
            row.push(d[s].into());
        }
        t.push(row);
    }
    Ok(t.render(cfg.format))
}

pub fn roster(cfg: &RunConfig, scores: &Path, column: Option<&str>, roster: &Path, top: usize) -> CliResult<Vec<u8>> {
    let table = read_scores(scores)?;
    let (name, values) = table.column(column)?;
    let measure = name.parse().unwrap_or(Measure::Indegree);
    let sv = ScoreVector::new(measure, table.authors.clone(), values.to_vec())?;
    let members = parse_roster(&read_text(roster)?).map_err(|e| CliError::data(roster.display(), e))?;
    let m = roster_match(&sv, &members, top)?;
    let mut t = Table::new(["k", "group_size", "roster_size", "matched", "matched_authors"]);
    let matched: Vec<&str> = m.matched.iter().map(AuthorKey::as_str).collect();
    t.push(vec![m.k.into(), m.group_size.into(), members.len().into(), m.count.into(), matched.join(";").into()]);
    Ok(t.render(cfg.format))
}
