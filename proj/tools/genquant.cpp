#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "genquant/cli/commands.hpp"
#include "genquant/error.hpp"

namespace {

namespace fs = std::filesystem;

// A bare system name such as "spherical" is looked up among the shipped files.
fs::path locate(const std::string& argument) {
  const fs::path given(argument);
  if (fs::exists(given)) return given;
  const fs::path shipped = fs::path(GENQUANT_SYSTEMS_DIR) / given;
  if (fs::exists(shipped)) return shipped;
  if (!given.has_extension() && fs::exists(fs::path(shipped).replace_extension(".gq"))) {
    return fs::path(shipped).replace_extension(".gq");
  }
  return given;
}

std::uint64_t parse_seed(const std::string& text, const std::string& origin) {
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw gq::Error(origin + " is not a non-negative integer: " + text);
  return value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coordinate-independent quantization: derivations, checks and spectra"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string format_name = "text";
  app.add_option("--seed", seed, "seed for the equivalence sampler and the eigensolver (default: GENQUANT_SEED or 1729)");
  app.add_option("--format", format_name, "output format")->check(CLI::IsMember({"text", "latex", "json"}));

  gq::cli::CommandOptions options;
  std::string coords_file;
  std::string a_file;
  std::string b_file;
  std::string potential;
  std::map<std::string, double> params;
  bool log_radial = false;
  bool no_reduction = false;
  auto& spectrum_options = options.spectrum;

  auto add_potential = [&](CLI::App* sub) {
    sub->add_option("--potential", potential, "potential expression, overriding the document");
  };
  auto add_numeric = [&](CLI::App* sub) {
    sub->add_option("--levels", spectrum_options.levels, "number of distinct levels")->capture_default_str();
    sub->add_option("--box", spectrum_options.box_radius, "truncation radius of infinite ranges")->capture_default_str();
    sub->add_option("--nodes", spectrum_options.nodes, "nodes per axis on product grids")->capture_default_str();
    sub->add_option("--radial-nodes", spectrum_options.radial_nodes, "nodes of the reduced radial grid")->capture_default_str();
    sub->add_flag("--log-radial", log_radial, "logarithmic radial spacing");
    sub->add_option("--radial-min", spectrum_options.radial_min, "inner face of a logarithmic radial grid")->capture_default_str();
    sub->add_option("--radial-max", spectrum_options.radial_max, "outer radius of the radial grid (0: box radius)")->capture_default_str();
    sub->add_flag("--no-reduction", no_reduction, "always use the full product grid");
    sub->add_option("--threshold", spectrum_options.cluster_threshold, "relative gap below which levels merge")->capture_default_str();
    sub->add_option("--hbar", spectrum_options.units.hbar, "value of hbar")->capture_default_str();
    sub->add_option("--mass", spectrum_options.units.mass, "value of m")->capture_default_str();
    sub->add_option("--param", params, "named potential parameter, name=value");
  };

  auto* derive = app.add_subcommand("derive", "emit every derivation stage for a coordinate system");
  derive->add_option("--coords", coords_file, "coordinate system document (.gq)")->required();
  add_potential(derive);
  auto* verify = app.add_subcommand("verify", "run the orthogonality, derivation and consistency checks");
  verify->add_option("--coords", coords_file, "coordinate system document (.gq)")->required();
  add_potential(verify);
  auto* spectrum = app.add_subcommand("spectrum", "lowest levels of the discretized operator");
  spectrum->add_option("--coords", coords_file, "coordinate system document (.gq)")->required();
  add_potential(spectrum);
  add_numeric(spectrum);
  auto* compare = app.add_subcommand("compare", "compare the spectra of one potential in two systems");
  compare->add_option("--a", a_file, "first coordinate system document")->required();
  compare->add_option("--b", b_file, "second coordinate system document")->required();
  compare->add_option("--tol", options.tol, "relative tolerance per level")->capture_default_str();
  add_potential(compare);
  add_numeric(compare);
  for (auto* sub : {derive, verify, spectrum, compare}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (!seed) {
      if (const char* env = std::getenv("GENQUANT_SEED")) seed = parse_seed(env, "GENQUANT_SEED");
    }
    const std::uint64_t chosen = seed.value_or(gq::sym::kDefaultSeed);
    gq::sym::set_default_seed(chosen);
    spectrum_options.eigen.seed = chosen;
    spectrum_options.units.parameters = params;
    spectrum_options.allow_reduction = !no_reduction;
    if (log_radial) spectrum_options.radial_spacing = gq::numeric::Spacing::Logarithmic;
    if (!potential.empty()) options.potential = potential;

    const auto* chosen_sub = app.get_subcommands().front();
    options.command = chosen_sub->get_name();
    if (options.command == "compare") {
      options.documents = {gq::cli::load_document(locate(a_file)), gq::cli::load_document(locate(b_file))};
    } else {
      options.documents = {gq::cli::load_document(locate(coords_file))};
    }
    const auto report = gq::cli::run_command(options);
    std::cout << gq::cli::render(report, *gq::cli::format_from_name(format_name));
    return gq::cli::exit_code(report);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
