// Command line front end: classify orders, run the representation oracle,
// execute the constructions, check representation files, verify the catalog
// and render figures.
//
// Exit codes: 0 success / SAT, 1 property failure / UNSAT, 2 input error,
// 3 timeout.

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "trapo/catalog.hpp"
#include "trapo/classifier.hpp"
#include "trapo/constructions.hpp"
#include "trapo/io.hpp"
#include "trapo/oracle.hpp"
#include "trapo/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitInput = 2;
constexpr int kExitTimeout = 3;

trapo::Poset load_poset_arg(const std::string& arg) {
  auto names = trapo::catalog_names();
  if (std::find(names.begin(), names.end(), arg) != names.end())
    return trapo::catalog_load(arg).poset;
  return trapo::parse_poset_file(trapo::read_file(arg)).poset;
}

trapo::PropertyQuery parse_query(const std::string& spec) {
  trapo::PropertyQuery q;
  std::string token;
  std::istringstream in(spec);
  while (std::getline(in, token, ',')) {
    if (token == "trapezoid" || token.empty())
      continue;  // implicit
    else if (token == "proper")
      q.proper = true;
    else if (token == "unit")
      q.unit = true;
    else if (token == "parallelogram")
      q.parallelogram = true;
    else if (token == "rectangle")
      q.rectangle = true;
    else
      throw std::invalid_argument("unknown property: " + token);
  }
  return q;
}

long long seconds_to_ms(double s) { return s < 0 ? -1 : static_cast<long long>(s * 1000); }

int cmd_classify(const std::string& file, double budget) {
  trapo::Poset p = load_poset_arg(file);
  trapo::ClassSet cs = trapo::classify(p, seconds_to_ms(budget));
  std::cout << cs.to_string() << "\n";
  return cs.unresolved ? kExitTimeout : kExitOk;
}

int cmd_oracle(const std::string& file, const std::string& require, double budget, bool trace) {
  trapo::Poset p = load_poset_arg(file);
  trapo::PropertyQuery q = parse_query(require);
  trapo::OracleOptions opt;
  opt.budget_ms = seconds_to_ms(budget);
  if (trace) opt.trace = &std::cerr;
  trapo::OracleResult r = trapo::exists_representation(p, q, opt);
  switch (r.status) {
    case trapo::OracleStatus::Found: {
      std::cout << trapo::serialize_rep("witness", *r.witness);
      std::cerr << "Found (" << r.nodes << " nodes, " << r.seconds << "s)\n";
      return kExitOk;
    }
    case trapo::OracleStatus::NotExist:
      std::cerr << "NotExist (" << r.nodes << " nodes, " << r.seconds << "s)\n";
      return kExitUnsat;
    default:
      std::cerr << "Timeout after " << r.seconds << "s (" << r.nodes << " nodes explored)\n";
      return kExitTimeout;
  }
}

int cmd_construct(const std::string& method, const std::vector<std::string>& files,
                  const std::string& out) {
  auto need = [&](std::size_t n) {
    if (files.size() != n)
      throw std::invalid_argument("method " + method + " expects " + std::to_string(n) +
                                  " input file(s)");
  };
  trapo::Representation rep;
  if (method == "lemma4") {
    need(2);
    rep = trapo::lemma4_unit_trapezoid(load_poset_arg(files[0]), load_poset_arg(files[1]));
  } else if (method == "lemma5") {
    need(2);
    rep = trapo::lemma5_proper_parallelogram(load_poset_arg(files[0]), load_poset_arg(files[1]));
  } else if (method == "thm6-unit") {
    need(1);
    rep = trapo::thm6_unit_trapezoid(load_poset_arg(files[0]));
  } else if (method == "thm6-pgram") {
    need(1);
    rep = trapo::thm6_proper_parallelogram(load_poset_arg(files[0]));
  } else if (method == "lemma7") {
    need(2);
    rep = trapo::lemma7_forward(load_poset_arg(files[0]), load_poset_arg(files[1]));
  } else {
    throw std::invalid_argument("unknown method: " + method);
  }
  std::string text = trapo::serialize_rep("constructed", rep);
  if (out.empty() || out == "-")
    std::cout << text;
  else
    trapo::write_file(out, text);
  std::cerr << "flags: " << rep.property_set().to_string() << "\n";
  return kExitOk;
}

int cmd_check(const std::string& repfile, const std::string& against) {
  trapo::Representation rep = trapo::parse_rep_file(trapo::read_file(repfile)).rep;
  std::cout << "flags: " << rep.property_set().to_string() << "\n";
  if (!against.empty()) {
    trapo::Poset p = load_poset_arg(against);
    bool same = rep.induced_order().same_order(p);
    std::cout << "induces target order: " << (same ? "yes" : "no") << "\n";
    if (!same) return kExitUnsat;
  }
  return kExitOk;
}

int cmd_catalog_verify(const std::string& which, double budget, double extended) {
  std::vector<std::string> names =
      which == "all" ? trapo::catalog_names() : std::vector<std::string>{which};
  bool any_fail = false, any_timeout = false;
  for (const auto& name : names) {
    trapo::CatalogEntry entry = trapo::catalog_load(name);
    trapo::VerifyReport report =
        trapo::verify_entry(entry, seconds_to_ms(budget), seconds_to_ms(extended));
    std::cout << report.to_string();
    any_fail |= report.failed();
    any_timeout |= report.timed_out();
  }
  if (any_fail) return kExitUnsat;
  if (any_timeout) return kExitTimeout;
  return kExitOk;
}

int cmd_render(const std::string& repfile, const std::string& out) {
  trapo::Representation rep = trapo::parse_rep_file(trapo::read_file(repfile)).rep;
  trapo::render_svg_file(rep, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trapezoid order classification toolkit"};
  app.require_subcommand(1);

  std::string file, require = "", out, against, method, entry = "all";
  std::vector<std::string> files;
  double budget = 120.0, extended = 3600.0;
  bool trace = false;

  auto* classify = app.add_subcommand("classify", "place an order in the class hierarchy");
  classify->add_option("file", file, "poset file or catalog name")->required();
  classify->add_option("--budget", budget, "time budget in seconds (-1 = unlimited)");

  auto* oracle = app.add_subcommand("oracle", "decide existence of a representation");
  oracle->add_option("poset", file, "poset file or catalog name")->required();
  oracle->add_option("--require", require,
                     "comma separated properties: proper,unit,parallelogram,rectangle");
  oracle->add_option("--budget", budget, "time budget in seconds (-1 = unlimited)");
  oracle->add_flag("--trace", trace, "emit the branch tree to stderr");

  auto* construct = app.add_subcommand("construct", "run a representation construction");
  construct
      ->add_option("--method", method, "one of lemma4 lemma5 thm6-unit thm6-pgram lemma7")
      ->required();
  construct->add_option("files", files, "input poset files or catalog names")->required();
  construct->add_option("-o,--output", out, "output representation file (- for stdout)");

  auto* check = app.add_subcommand("check", "inspect a representation file");
  check->add_option("rep", file, "representation file")->required();
  check->add_option("--against", against, "poset the representation should induce");

  auto* catalog = app.add_subcommand("catalog", "catalog operations");
  auto* verify = catalog->add_subcommand("verify", "verify the classification results");
  verify->add_option("entry", entry, "entry name or 'all'");
  verify->add_option("--budget", budget, "per-check budget in seconds");
  verify->add_option("--extended-budget", extended,
                     "budget for the extended negative checks in seconds");

  auto* render = app.add_subcommand("render", "render a representation as SVG");
  render->add_option("rep", file, "representation file")->required();
  render->add_option("-o,--output", out, "output SVG path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(classify)) return cmd_classify(file, budget);
    if (app.got_subcommand(oracle)) return cmd_oracle(file, require, budget, trace);
    if (app.got_subcommand(construct)) return cmd_construct(method, files, out);
    if (app.got_subcommand(check)) return cmd_check(file, against);
    if (app.got_subcommand(catalog)) {
      if (catalog->got_subcommand(verify)) return cmd_catalog_verify(entry, budget, extended);
      std::cerr << "catalog requires the verify subcommand\n";
      return kExitInput;
    }
    if (app.got_subcommand(render)) return cmd_render(file, out);
  } catch (const trapo::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const trapo::PosetError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const trapo::CatalogError& e) {
    std::cerr << "catalog error: " << e.what() << "\n";
    return kExitInput;
  } catch (const trapo::ForbiddenSuborder& e) {
    std::cerr << "input error: " << e.what();
    if (!e.occurrence.empty()) {
      std::cerr << " [";
      bool first = true;
      for (auto& [k, v] : e.occurrence) {
        std::cerr << (first ? "" : " ") << k << "->" << v;
        first = false;
      }
      std::cerr << "]";
    }
    std::cerr << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
