// formalflows: exact iteration of formal self-maps of K^d fixing 0.
//
// Subcommands operate on map files (see README for the grammar) and print
// deterministic text, or JSON with --json.  Exit codes: 0 success, 2 parse
// error, 3 precondition violation, 4 verification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "formalflows/formalflows.hpp"
#include "formalflows/json_io.hpp"

namespace ff = formalflows;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitVerification = 4;

int max_cap() {
  if (const char* env = std::getenv("FORMALFLOWS_MAX_CAP"))
    return std::atoi(env);
  return 16;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ff::precondition_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ff::ParsedMapFile load_map(const std::string& path, int cap_override) {
  ff::ParsedMapFile parsed = ff::parse_map_file(read_file(path));
  if (cap_override > 0 && cap_override != parsed.cap) {
    // re-parse at the requested cap so truncation is applied uniformly
    std::string text = read_file(path);
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
      if (line.rfind("cap", 0) == 0)
        out << "cap " << cap_override << "\n";
      else
        out << line << "\n";
    }
    parsed = ff::parse_map_file(out.str());
  }
  if (parsed.cap > max_cap())
    throw ff::precondition_error(
        "cap " + std::to_string(parsed.cap) + " exceeds FORMALFLOWS_MAX_CAP=" +
        std::to_string(max_cap()));
  return parsed;
}

void emit_map(const ff::FormalMap& g, const std::string& name, bool json) {
  if (json)
    std::cout << ff::map_to_json(g, name).dump(2) << "\n";
  else
    std::cout << ff::render_map_file(g, name);
}

void emit_integrality(const ff::FormalMap& g) {
  auto report = ff::integrality_report(g);
  if (report.empty()) {
    std::cout << "# all coefficients integral\n";
    return;
  }
  for (const auto& entry : report)
    std::cout << "# non-integral: component " << entry.component + 1 << ", "
              << entry.monomial.str() << " -> " << entry.value.str() << "\n";
}

std::vector<int> parse_digit_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

ff::Ring ring_from_flags(const std::string& ring_name, std::int64_t ch) {
  if (ch > 0) return ff::Ring::Fp(ch);
  if (ring_name == "Z") return ff::Ring::Z();
  if (ring_name == "Q" || ring_name.empty()) return ff::Ring::Q();
  throw ff::precondition_error("unknown ring '" + ring_name + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"exact iteration of formal self-maps fixing 0"};
  app.require_subcommand(1);

  std::string map_path, map2_path, alpha_str = "1", alpha2_str = "1";
  std::string digits_csv, values_csv, ring_name;
  std::int64_t k = 1, n = 1, characteristic = 0, order_bound = 20;
  int r = 1, cap_override = 0;
  bool json = false, blocks = false;

  app.add_flag("--json", json, "JSON output");

  auto add_map_opts = [&](CLI::App* cmd, bool second = false) {
    cmd->add_option("--map", map_path, "map file")->required();
    if (second) cmd->add_option("--map2", map2_path, "second map file")->required();
    cmd->add_option("--cap-override", cap_override, "re-truncate to this cap");
    cmd->add_flag("--json", json, "JSON output");
  };

  auto* c_iterate = app.add_subcommand("iterate", "k-fold composition g^k");
  add_map_opts(c_iterate);
  c_iterate->add_option("--k", k, "iteration count")->required();

  auto* c_inverse = app.add_subcommand("inverse", "compositional inverse");
  add_map_opts(c_inverse);

  auto* c_compose = app.add_subcommand("compose", "composition f o g");
  add_map_opts(c_compose, true);

  auto* c_frac = app.add_subcommand("frac", "fractional iterate g^(alpha)");
  add_map_opts(c_frac);
  c_frac->add_option("--alpha", alpha_str, "rational alpha")->required();

  auto* c_root = app.add_subcommand("root", "compositional n-th root (char 0)");
  add_map_opts(c_root);
  c_root->add_option("--n", n, "root order")->required();

  auto* c_cadic = app.add_subcommand("cadic", "c-adic iterate g^(z)");
  add_map_opts(c_cadic);
  c_cadic->add_option("--digits", digits_csv, "little-endian digits z0,z1,...")
      ->required();

  auto* c_cadic_root =
      app.add_subcommand("cadic-root", "compositional n-th root (char c)");
  add_map_opts(c_cadic_root);
  c_cadic_root->add_option("--n", n, "root order")->required();

  auto* c_order = app.add_subcommand("order", "least n with g^n = identity");
  add_map_opts(c_order);
  c_order->add_option("--order-bound", order_bound, "search bound");

  auto* c_commute =
      app.add_subcommand("commute-check", "g^(a) o h^(b) = h^(b) o g^(a)");
  add_map_opts(c_commute, true);
  c_commute->add_option("--alpha", alpha_str, "rational a");
  c_commute->add_option("--alpha2", alpha2_str, "rational b");

  auto* c_sumfn = app.add_subcommand("sumfn-fit", "fit values to the rho-basis");
  c_sumfn->add_option("--values", values_csv, "values at k = 0,1,...")->required();
  c_sumfn->add_option("--ring", ring_name, "Z or Q (characteristic 0)");
  c_sumfn->add_option("--char", characteristic, "prime characteristic");
  c_sumfn->add_flag("--json", json, "JSON output");

  auto* c_matrix = app.add_subcommand("matrix", "basic sum-function matrix B_r");
  c_matrix->add_option("--char", characteristic, "prime characteristic")->required();
  c_matrix->add_option("--r", r, "block level");
  c_matrix->add_flag("--blocks", blocks, "template-block notation for r = 2");
  c_matrix->add_flag("--json", json, "JSON output");

  auto* c_factor = app.add_subcommand(
      "factor", "torsion x tangent factorization for finite-order linear part");
  add_map_opts(c_factor);
  c_factor->add_option("--order-bound", order_bound, "linear-part order bound");

  CLI11_PARSE(app, argc, argv);

  if (c_iterate->parsed()) {
    auto in = load_map(map_path, cap_override);
    emit_map(ff::iterate(in.map, k), in.name + "_iter" + std::to_string(k), json);
  } else if (c_inverse->parsed()) {
    auto in = load_map(map_path, cap_override);
    emit_map(ff::invert(in.map), in.name + "_inv", json);
  } else if (c_compose->parsed()) {
    auto a = load_map(map_path, cap_override);
    auto b = load_map(map2_path, cap_override);
    if (a.ring != b.ring)
      throw ff::ring_error("compose: maps use different rings");
    emit_map(ff::compose(a.map, b.map), a.name + "_o_" + b.name, json);
  } else if (c_frac->parsed()) {
    auto in = load_map(map_path, cap_override);
    ff::Value alpha = ff::Value::parse(ff::Ring::Q(), alpha_str);
    ff::FormalMap out = ff::frac_iterate(in.map, alpha);
    emit_map(out, in.name + "_frac", json);
    if (!json) emit_integrality(out);
  } else if (c_root->parsed()) {
    auto in = load_map(map_path, cap_override);
    ff::FormalMap out = ff::nth_root(in.map, n);
    emit_map(out, in.name + "_root" + std::to_string(n), json);
    if (!json) emit_integrality(out);
  } else if (c_cadic->parsed()) {
    auto in = load_map(map_path, cap_override);
    ff::CAdicInt z(in.ring.characteristic, parse_digit_list(digits_csv));
    ff::FormalMap out = ff::cadic_iterate(in.map, z);
    if (!json)
      std::cout << "# digits " << z.str() << " (mod " << in.ring.characteristic
                << "^" << z.precision() << ")\n";
    emit_map(out, in.name + "_cadic", json);
  } else if (c_cadic_root->parsed()) {
    auto in = load_map(map_path, cap_override);
    emit_map(ff::cadic_root(in.map, n), in.name + "_root" + std::to_string(n),
             json);
  } else if (c_order->parsed()) {
    auto in = load_map(map_path, cap_override);
    auto ord = ff::order_upto(in.map, order_bound);
    if (ord)
      std::cout << "order " << *ord << " (at cap " << in.cap << ")\n";
    else
      std::cout << "none (at cap " << in.cap << ", bound " << order_bound
                << ")\n";
  } else if (c_commute->parsed()) {
    auto a = load_map(map_path, cap_override);
    auto b = load_map(map2_path, cap_override);
    ff::Value va = ff::Value::parse(ff::Ring::Q(), alpha_str);
    ff::Value vb = ff::Value::parse(ff::Ring::Q(), alpha2_str);
    bool ok = ff::commuting_pair_check(a.map, b.map, va, vb);
    std::cout << (ok ? "commute: yes\n" : "commute: no\n");
    if (!ok) return kExitVerification;
  } else if (c_sumfn->parsed()) {
    ff::Ring R = ring_from_flags(ring_name, characteristic);
    std::vector<ff::Value> vals;
    std::stringstream ss(values_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(ff::Value::parse(R, tok));
    ff::SumFunction h = R.char_zero() ? ff::fit_char0(R, vals)
                                      : ff::fit_charc(R, vals);
    if (json) {
      std::cout << ff::sumfn_to_json(h).dump(2) << "\n";
    } else {
      std::cout << "coeffs " << h.str() << "\n";
      std::int64_t upto = static_cast<std::int64_t>(vals.size()) + 3;
      for (std::int64_t i = 0; i <= upto; ++i)
        std::cout << i << ": " << h.eval(i).str() << "\n";
    }
  } else if (c_matrix->parsed()) {
    int rmax = characteristic <= 3 ? 4 : 3;
    if (r < 1 || r > rmax)
      throw ff::precondition_error("matrix level r out of CLI range [1, " +
                                   std::to_string(rmax) + "]");
    ff::BlockMatrix B = ff::block_matrix(characteristic, r);
    if (json) {
      std::cout << ff::matrix_to_json(B).dump(2) << "\n";
    } else if (blocks && r == 2) {
      // template-block notation: entry (i, j) of the template scales a copy
      // of T; print the scale factors
      ff::BlockMatrix T = ff::template_matrix(characteristic);
      for (std::int64_t i = 0; i < characteristic; ++i) {
        for (std::int64_t j = 0; j < characteristic; ++j) {
          if (j) std::cout << " ";
          std::int64_t f = T.at(i, j);
          if (f == 0)
            std::cout << "0";
          else if (f == 1)
            std::cout << "T";
          else
            std::cout << f << "T";
        }
        std::cout << "\n";
      }
    } else {
      std::cout << B.str();
    }
  } else if (c_factor->parsed()) {
    auto in = load_map(map_path, cap_override);
    auto fac = ff::factor_finite_linear_part(in.map,
                                             static_cast<int>(order_bound));
    std::cout << "# linear part order " << fac.order << "\n";
    emit_map(fac.torsion, in.name + "_torsion", json);
    emit_map(fac.tangent, in.name + "_tangent", json);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ff::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ff::verification_error& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const ff::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
}
