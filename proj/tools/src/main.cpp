#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "jetvar/cli/commands.hpp"

namespace {

using namespace jetvar;
using namespace jetvar::cli;

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

std::string read_model(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read model file '" + path + "'");
  buf << in.rdbuf();
  return buf.str();
}

int order_cap_from_env() {
  const char* raw = std::getenv("JETVAR_MAX_ORDER");
  if (!raw || !*raw) return kDefaultOrderCap;
  char* end = nullptr;
  long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 1 || v > static_cast<long>(kMaxIndexLength))
    throw UsageError("JETVAR_MAX_ORDER must be an integer between 1 and " + std::to_string(kMaxIndexLength));
  return static_cast<int>(v);
}

void report_error(const std::string& format, const Error& err) {
  std::cerr << "error[" << error_code_name(err.code()) << "]: " << err.what() << "\n";
  if (format != "json") return;
  nlohmann::json doc;
  doc["error"]["code"] = error_code_name(err.code());
  doc["error"]["message"] = err.what();
  if (const auto* p = dynamic_cast<const ParseError*>(&err)) {
    doc["error"]["message"] = p->message();
    doc["error"]["line"] = p->location().line;
    doc["error"]["column"] = p->location().column;
    doc["error"]["expected"] = p->expected();
  }
  std::cout << doc.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational calculus on jet spaces: Euler operators, Lepage forms, symmetries."};
  app.set_version_flag("--version", "jetvar 0.1.0");
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json", "latex"}))
      ->capture_default_str();
  app.require_subcommand(1);

  CommandOptions options;
  std::string model_path;
  std::string fields_csv;
  std::map<std::string, CLI::App*> subs;
  const std::map<std::string, std::string> help{
      {"euler", "Euler-Lagrange expressions of L"},
      {"lepage", "Lepage equivalent (theta: order <= 2, delta: order <= 1)"},
      {"split", "canonical split of h~(d rho) for L*omega_0 or --form"},
      {"nulltest", "decide whether L is a null Lagrangian, with certificate"},
      {"makenull", "null Lagrangian h(d eta) generated by --form"},
      {"noether", "Noether equation for --field"},
      {"invariance", "invariance and generalized invariance for --field"},
      {"current", "conserved current of --field"},
      {"symmetric", "Euler systems of L and of L_X for each of --fields"},
      {"covariance", "general covariance coefficients on the tensor bundle"},
      {"weakcritical", "weak critical equations on the tensor bundle"},
      {"residual", "Euler expressions along --section"},
      {"gradcheck", "discrete action gradient against E along --section"},
  };
  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("model", model_path, "Model file, or - for stdin")->required();
    sub->fallthrough();
    subs[name] = sub;
  }
  subs["lepage"]->add_option("--method", options.method, "theta or delta")
      ->check(CLI::IsMember({"theta", "delta"}))
      ->capture_default_str();
  subs["split"]->add_option("--form", options.form, "Form name (defaults to L*omega_0)");
  subs["makenull"]->add_option("--form", options.form, "(n-1)-form on Y")->required();
  for (const char* name : {"noether", "invariance", "current"})
    subs[name]->add_option("--field", options.field, "Projectable field name")->required();
  subs["symmetric"]->add_option("--fields", fields_csv, "Comma-separated field names");
  for (const char* name : {"residual", "gradcheck"})
    subs[name]->add_option("--section", options.section, "Section name")->required();
  subs["gradcheck"]->add_option("--grid", options.grid, "Nodes per axis")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  for (const auto& [name, sub] : subs)
    if (sub->parsed()) options.command = name;
  std::stringstream csv(fields_csv);
  for (std::string item; std::getline(csv, item, ',');)
    if (!item.empty()) options.fields.push_back(item);

  try {
    Model model = parse_model(read_model(model_path), order_cap_from_env());
    std::vector<std::string> warnings = model.warnings;
    Node result = run_command(model, options, warnings);
    if (format == "json") {
      std::cout << json_document(model, result, warnings);
    } else {
      for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
      std::cout << (format == "latex" ? render_latex(result) : render_text(result));
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    report_error(format, e);
    return kExitDomain;
  }
}
