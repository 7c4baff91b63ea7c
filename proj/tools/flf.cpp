#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "flf/report.hpp"

namespace {

constexpr int kInputError = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw flf::Error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) {
    std::cerr << "flf: cannot write '" << output << "'\n";
    return kInputError;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of finite flat correspondences"};
  app.set_version_flag("--version", flf::tool_version());

  std::string command, workspace_path, field, format = "text", output, recheck_path;
  std::size_t budget = 1'000'000;
  int window = 8;
  bool no_timing = false;
  std::vector<std::string> corr;
  std::string beta, gamma, f, f2, t, sign, sgm, tgm;
  std::optional<int> m, n;

  app.add_option("command", command, "run, print, or one of the operations");
  app.add_option("workspace", workspace_path, "workspace document");
  app.add_option("--field", field, "coefficient field: QQ or Fp:<p>");
  app.add_option("--budget", budget, "reduction-step budget per Groebner computation")->capture_default_str();
  app.add_option("--window", window, "filtration window")->capture_default_str();
  app.add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--output", output, "write the report to this file");
  app.add_option("--recheck", recheck_path, "re-validate a structured report");
  app.add_flag("--no-timing", no_timing, "report zero timings (reproducible output)");
  app.add_option("--corr", corr, "correspondence name (twice for compose, add, tensor)");
  app.add_option("--beta", beta, "source-side span for verify-compat");
  app.add_option("--gamma", gamma, "target-side span for verify-compat");
  app.add_option("--f", f, "polynomial f");
  app.add_option("--f2", f2, "second polynomial for the two-term bound");
  app.add_option("--t", t, "Gm coordinate of the base");
  app.add_option("--m", m, "m");
  app.add_option("--n", n, "n");
  app.add_option("--sign", sign, "+ or -");
  app.add_option("--sgm", sgm, "source Gm coordinate");
  app.add_option("--tgm", tgm, "target Gm coordinate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  if (!recheck_path.empty()) {
    nlohmann::json batch;
    try {
      batch = nlohmann::json::parse(slurp(recheck_path));
      flf::RecheckOutcome r = flf::recheck(batch, budget);
      for (const auto& line : r.lines) std::cout << line << "\n";
      std::cout << "recheck: " << (r.ok ? "ok" : "failed") << " (" << r.confirmed << " confirmed, " << r.rejected
                << " rejected, " << r.skipped << " skipped)\n";
      return r.ok ? 0 : 1;
    } catch (const std::exception& e) {
      std::cerr << "flf: " << e.what() << "\n";
      return kInputError;
    }
  }
  if (command.empty()) {
    std::cerr << app.help();
    return kInputError;
  }

  std::optional<flf::CoefficientField> fallback;
  flf::Workspace ws;
  std::string input;
  try {
    if (!field.empty()) fallback = flf::CoefficientField::parse(field);
    if (!workspace_path.empty()) input = slurp(workspace_path);
    ws = flf::parse_workspace(input, fallback);
  } catch (const std::exception& e) {
    std::cerr << "flf: " << (workspace_path.empty() ? "" : workspace_path + ": ") << e.what() << "\n";
    return kInputError;
  }

  if (command == "print") return emit(flf::print_workspace(ws), output);

  std::vector<flf::Request> requests;
  if (command == "run") {
    requests = ws.requests;
    if (requests.empty()) {
      std::cerr << "flf: workspace has no requests\n";
      return kInputError;
    }
  } else {
    flf::Request r;
    r.name = command;
    r.command = command;
    for (const auto& c : corr) r.args.emplace_back("corr", c);
    auto put = [&](const char* key, const std::string& v) {
      if (!v.empty()) r.args.emplace_back(key, v);
    };
    put("beta", beta);
    put("gamma", gamma);
    put("f", f);
    put("f2", f2);
    put("t", t);
    if (m) r.args.emplace_back("m", std::to_string(*m));
    if (n) r.args.emplace_back("n", std::to_string(*n));
    put("sign", sign);
    put("sgm", sgm);
    put("tgm", tgm);
    try {
      flf::check_request(ws, r);
    } catch (const std::exception& e) {
      std::cerr << "flf: " << e.what() << "\n";
      return kInputError;
    }
    input += "\nrequest " + r.name + " " + r.echo() + "\n";
    requests.push_back(r);
  }

  flf::RunOptions options;
  options.groebner.budget = budget;
  options.window = window;
  options.timing = !no_timing;
  std::vector<flf::Report> reports;
  for (const auto& r : requests) reports.push_back(flf::run_request(ws, r, options));
  const nlohmann::json batch = flf::batch_json(reports, flf::sha256_hex(input), ws, options);

  const std::string text = format == "structured" ? batch.dump(1) + "\n" : flf::render_text(batch);
  if (int rc = emit(text, output)) return rc;
  return flf::exit_code(flf::aggregate(reports));
}
