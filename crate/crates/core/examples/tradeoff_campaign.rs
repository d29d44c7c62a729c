// Random-state campaign over a few dimensions, printing per-dimension pass
// counts and the mean gap between the incoherent entropy and `C_hs`.
//
// ```bash
// cargo run --release --example tradeoff_campaign
// ```

use qduality::cli::campaign_csv;
use qduality::verify::{campaign, CampaignConfig, Inequality};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let config = CampaignConfig {
        d_min: 2,
        d_max: 5,
        samples: 200,
        seed: 11,
        ..Default::default()
    };
    let res = campaign(&config)?;
    for s in &res.summary.per_dim {
        let tohs = s.passes.iter().find(|(q, _)| *q == Inequality::TohsLinear).map(|p| p.1);
        println!(
            "d = {}: {}/{} states pass everything, tohs_l passes {:?}, mean slack {:.4}",
            s.dim, s.all_pass, s.samples, tohs, s.mean_tohs_slack
        );
    }
    println!("all pass: {}", res.summary.all_pass());

    let path = std::env::temp_dir().join("qduality_campaign_example.csv");
    std::fs::write(&path, campaign_csv(&res.records)?)?;
    println!("wrote {} rows to {}", res.records.len(), path.display());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
