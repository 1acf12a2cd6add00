// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use clap::Parser;

fn main() {
    let cli = zqoc::cli::Cli::parse();
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = zqoc::cli::run(cli, &mut stdout) {
        eprintln!("zqoc: {e}");
        std::process::exit(e.exit_code());
    }
}
