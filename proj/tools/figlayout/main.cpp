// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "litkg/error.hpp"
#include "litkg/figure_layout.hpp"
#include "litkg/service.hpp"

int main(int argc, char** argv) {
  CLI::App app{"figlayout: segment a figure layout into subfigures"};
  std::string input, output, data_dir;
  app.add_option("input", input, "Layout JSON")->required()->check(CLI::ExistingFile);
  app.add_option("-o,--output", output, "Output file (default: stdout)");
  app.add_option("--data-dir", data_dir, "Ground labels against this knowledge base")->check(CLI::ExistingDirectory);
  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream in(input, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto layout = litkg::parse_figure_layout(buf.str());

    std::map<std::string, std::vector<std::string>> aliases;
    if (!data_dir.empty()) aliases = litkg::DataStore(data_dir).load().graph.alias_index();
    const auto result = litkg::process_figure(layout, data_dir.empty() ? nullptr : &aliases);

    for (char c : result.leftovers) std::cerr << "leftover subcaption: " << c << "\n";
    const auto json = litkg::subfigures_to_json(result.records) + "\n";
    if (output.empty()) {
      std::cout << json;
    } else {
      std::ofstream(output, std::ios::binary) << json;
    }
    return 0;
  } catch (const litkg::Error& e) {
    std::cerr << litkg::error_response(e).body;
    return 1;
  }
}
