#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "ifr/achievable.hpp"
#include "ifr/capacity.hpp"
#include "ifr/channel.hpp"
#include "ifr/channel_spec.hpp"
#include "ifr/decodable.hpp"
#include "ifr/gic.hpp"
#include "ifr/sfm.hpp"

namespace {

using namespace ifr;

struct CliOptions {
  std::string spec_path;
  double tol = 1e-9;
  std::string solver = "auto";
  std::string format = "table";
  std::string grid;
  std::string order = "all";
};

SolveOptions solve_options(const CliOptions& o) {
  SolveOptions opts;
  opts.tol = o.tol;
  if (o.solver == "exhaustive") opts.solver = Solver::kExhaustive;
  else if (o.solver == "minnorm") opts.solver = Solver::kMinNorm;
  else opts.solver = Solver::kAuto;
  return opts;
}

// Fixed 9 fractional digits; values that round to zero print without a sign.
std::string fmt9(double v) {
  if (std::fabs(v) < 5e-10) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

std::string csv_cell(const std::string& s) {
  if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string json_str(const std::string& s) { return "\"" + s + "\""; }

std::string join(const std::vector<std::string>& cells, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out += sep;
    out += cells[i];
  }
  return out;
}

void csv_row(const std::vector<std::string>& cells) {
  std::vector<std::string> quoted;
  quoted.reserve(cells.size());
  for (const auto& c : cells) quoted.push_back(csv_cell(c));
  std::cout << join(quoted, ",") << "\n";
}

std::string ordering_str(const std::vector<int>& ord) {
  std::string out;
  for (size_t i = 0; i < ord.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(ord[i]);
  }
  return out;
}

std::vector<int> parse_ordering(const std::string& text) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t dash = std::min(text.find('-', pos), text.size());
    const std::string tok = text.substr(pos, dash - pos);
    try {
      size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument("--order: expected `all` or a permutation like 2-1-3");
    }
    pos = dash + 1;
    if (dash == text.size()) break;
  }
  return out;
}

std::vector<GridRange> parse_grid(const std::string& text, int axes) {
  std::vector<GridRange> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t comma = std::min(text.find(',', pos), text.size());
    const std::string tok = text.substr(pos, comma - pos);
    const size_t c1 = tok.find(':');
    const size_t c2 = c1 == std::string::npos ? std::string::npos : tok.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos || tok.find(':', c2 + 1) != std::string::npos)
      throw std::invalid_argument("--grid: each axis must be start:stop:step");
    try {
      GridRange r;
      r.start = std::stod(tok.substr(0, c1));
      r.stop = std::stod(tok.substr(c1 + 1, c2 - c1 - 1));
      r.step = std::stod(tok.substr(c2 + 1));
      out.push_back(r);
    } catch (const std::exception&) {
      throw std::invalid_argument("--grid: each axis must be start:stop:step");
    }
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  if (out.size() == 1 && axes > 1) out.assign(static_cast<size_t>(axes), out[0]);
  if (out.size() != static_cast<size_t>(axes))
    throw std::invalid_argument("--grid: expected one range per interferer (" +
                                std::to_string(axes) + ")");
  return out;
}

struct ConstraintRow {
  std::string id;
  std::string relation;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool ok = false;
};

void print_constraints(const std::vector<ConstraintRow>& rows, const std::string& format) {
  if (format == "csv") {
    csv_row({"constraint", "relation", "lhs", "rhs", "slack", "ok"});
    for (const auto& r : rows)
      csv_row({r.id, r.relation, fmt9(r.lhs), fmt9(r.rhs), fmt9(r.slack), r.ok ? "yes" : "no"});
    return;
  }
  size_t width = std::string("constraint").size();
  for (const auto& r : rows) width = std::max(width, r.id.size());
  std::printf("%-*s  %-3s %14s  %14s  %14s  %s\n", static_cast<int>(width), "constraint", "rel",
              "lhs", "rhs", "slack", "ok");
  for (const auto& r : rows)
    std::printf("%-*s  %-3s %14s  %14s  %14s  %s\n", static_cast<int>(width), r.id.c_str(),
                r.relation.c_str(), fmt9(r.lhs).c_str(), fmt9(r.rhs).c_str(),
                fmt9(r.slack).c_str(), r.ok ? "yes" : "no");
}

std::string constraints_json(const std::vector<ConstraintRow>& rows) {
  std::vector<std::string> items;
  items.reserve(rows.size());
  for (const auto& r : rows)
    items.push_back("{\"id\":" + json_str(r.id) + ",\"relation\":" + json_str(r.relation) +
                    ",\"lhs\":" + fmt9(r.lhs) + ",\"rhs\":" + fmt9(r.rhs) +
                    ",\"slack\":" + fmt9(r.slack) + ",\"ok\":" + (r.ok ? "true" : "false") + "}");
  return "[" + join(items, ",") + "]";
}

int run_mds(const ChannelSpec& spec, const CliOptions& o) {
  const ReceiverView view = spec.receiver();
  const RateVector rates = spec.rates();
  const int m = spec.user_count();
  const UserSet ground = UserSet::all(m);
  const UserSet s = max_decodable_subset(view, ground, rates, solve_options(o));

  std::vector<ConstraintRow> rows;
  if (m <= 12) {
    for_each_subset(s, [&](UserSet v) {
      if (v.empty()) return;
      ConstraintRow r{"decode." + v.str(), "<=", rates.sum(v), sigma(view, s, v), 0.0, false};
      r.slack = r.rhs - r.lhs;
      r.ok = r.lhs <= r.rhs + o.tol;
      rows.push_back(std::move(r));
    });
    const ReceiverView rest = remove_users(view, s);
    for_each_subset(ground - s, [&](UserSet u) {
      if (u.empty()) return;
      ConstraintRow r{"noise." + u.str(), ">", rates.sum(u), rho(rest, ground - s, u), 0.0, false};
      r.slack = r.lhs - r.rhs;
      r.ok = r.lhs > r.rhs + o.tol;
      rows.push_back(std::move(r));
    });
  }

  if (o.format == "json") {
    std::cout << "{\"max_decodable_subset\":" << json_str(s.str())
              << ",\"constraints\":" << constraints_json(rows) << "}\n";
    return 0;
  }
  if (o.format == "csv") {
    std::cout << "S," << csv_cell(s.str()) << "\n";
    print_constraints(rows, o.format);
    return 0;
  }
  std::cout << "S = " << s.str() << "\n";
  if (!rows.empty()) {
    std::cout << "\n";
    print_constraints(rows, o.format);
  }
  return 0;
}

int run_rate(const ChannelSpec& spec, const CliOptions& o) {
  if (!spec.has_intended()) throw SpecError(o.spec_path + ": field `intended` is required");
  const DecodeDecomposition d = achievable_rate(spec.receiver(), spec.rates(), solve_options(o));
  if (o.format == "json") {
    std::cout << "{\"rate\":" << fmt9(d.rate) << ",\"intended\":" << d.intended
              << ",\"noise\":" << json_str(d.noise.str()) << ",\"joint\":" << json_str(d.joint.str())
              << ",\"subtracted\":" << json_str(d.subtracted.str()) << "}\n";
    return 0;
  }
  if (o.format == "csv") {
    csv_row({"rate", "intended", "noise", "joint", "subtracted"});
    csv_row({fmt9(d.rate), std::to_string(d.intended), d.noise.str(), d.joint.str(),
             d.subtracted.str()});
    return 0;
  }
  std::cout << "rate = " << fmt9(d.rate) << "\n"
            << "intended user = " << d.intended << "\n"
            << "treated as noise = " << d.noise.str() << "\n"
            << "decoded jointly = " << d.joint.str() << "\n"
            << "decoded and subtracted first = " << d.subtracted.str() << "\n";
  return 0;
}

int run_surface(const ChannelSpec& spec, const CliOptions& o) {
  if (!spec.has_intended()) throw SpecError(o.spec_path + ": field `intended` is required");
  const ReceiverView view = spec.receiver();
  const int m = spec.user_count();
  if (m < 2) throw SpecError(o.spec_path + ": surface needs at least one interferer");
  const std::vector<GridRange> grid = parse_grid(o.grid, m - 1);
  const RateSurface surf = sample_rate_surface(view, grid, solve_options(o));

  if (o.format == "json") {
    std::vector<std::string> pts;
    pts.reserve(surf.points.size());
    for (const auto& p : surf.points) {
      std::vector<std::string> rs;
      rs.reserve(p.interferer_rates.size());
      for (double r : p.interferer_rates) rs.push_back(fmt9(r));
      pts.push_back("{\"interferer_rates\":[" + join(rs, ",") + "],\"rate\":" + fmt9(p.rate) +
                    ",\"region\":" + json_str(p.decodable.str()) +
                    ",\"active_set\":" + json_str(p.joint.str()) + "}");
    }
    std::vector<std::string> axes;
    for (int u : surf.interferers) axes.push_back(std::to_string(u));
    std::cout << "{\"interferers\":[" << join(axes, ",") << "],\"pieces\":" << surf.piece_count()
              << ",\"points\":[" << join(pts, ",") << "]}\n";
    return 0;
  }
  std::vector<std::string> header;
  for (int u : surf.interferers) header.push_back("R_" + std::to_string(u));
  header.push_back("R_" + std::to_string(*intended_user(view)));
  header.push_back("region");
  header.push_back("active_set");
  csv_row(header);
  for (const auto& p : surf.points) {
    std::vector<std::string> cells;
    for (double r : p.interferer_rates) cells.push_back(fmt9(r));
    cells.push_back(fmt9(p.rate));
    cells.push_back(p.decodable.str());
    cells.push_back(p.joint.str());
    csv_row(cells);
  }
  std::cerr << "pieces: " << surf.piece_count() << "\n";
  return 0;
}

int run_ladder(const ChannelSpec& spec, const CliOptions& o) {
  if (spec.kind() != ChannelKind::kGaussianSingleReceiver)
    throw SpecError(o.spec_path + ": ladder requires kind `gaussian-single-receiver`");
  const auto view = std::get<GaussianReceiverView>(spec.receiver());
  const RateVector rates = spec.rates();
  const BroadcastLadder ladder =
      build_ladder(view.effective_powers, rates, view.ground(), o.tol);

  auto level_power = [&](UserSet users) { return view.power(users); };
  if (o.format == "json") {
    std::vector<std::string> items;
    for (size_t i = 0; i < ladder.levels.size(); ++i)
      items.push_back("{\"noise\":" + fmt9(ladder.levels[i].noise) +
                      ",\"power\":" + fmt9(level_power(ladder.levels[i].users)) +
                      ",\"users\":" + json_str(ladder.levels[i].users.str()) + "}");
    std::cout << "{\"preplaced\":{\"users\":" << json_str(ladder.preplaced.str())
              << ",\"power\":" << fmt9(ladder.preplaced_power) << "},\"levels\":["
              << join(items, ",") << "]}\n";
    return 0;
  }
  if (o.format == "csv") {
    csv_row({"level", "noise", "power", "users"});
    if (!ladder.preplaced.empty())
      csv_row({"0", fmt9(0.0), fmt9(ladder.preplaced_power), ladder.preplaced.str()});
    for (size_t i = 0; i < ladder.levels.size(); ++i)
      csv_row({std::to_string(i + 1), fmt9(ladder.levels[i].noise),
               fmt9(level_power(ladder.levels[i].users)), ladder.levels[i].users.str()});
    return 0;
  }
  if (!ladder.preplaced.empty())
    std::cout << "preplaced (rate zero): users " << ladder.preplaced.str() << ", power "
              << fmt9(ladder.preplaced_power) << "\n";
  for (size_t i = 0; i < ladder.levels.size(); ++i)
    std::cout << "level " << (i + 1) << ": noise " << fmt9(ladder.levels[i].noise) << ", power "
              << fmt9(level_power(ladder.levels[i].users)) << ", users "
              << ladder.levels[i].users.str() << "\n";
  return 0;
}

int run_certify(const ChannelSpec& spec, const CliOptions& o) {
  if (spec.kind() != ChannelKind::kGaussianSingleReceiver)
    throw SpecError(o.spec_path + ": certify requires kind `gaussian-single-receiver`");
  if (!spec.has_intended()) throw SpecError(o.spec_path + ": field `intended` is required");
  const auto view = std::get<GaussianReceiverView>(spec.receiver());
  const CapacityCertificate cert = verify_capacity(view, spec.rates(), solve_options(o));

  std::vector<ConstraintRow> rows;
  rows.reserve(cert.checks.size());
  for (const auto& c : cert.checks) {
    ConstraintRow r;
    r.id = c.id;
    r.relation = c.kind == CheckKind::kEqual ? "==" : (c.kind == CheckKind::kStrictLess ? "<" : "<=");
    r.lhs = c.lhs;
    r.rhs = c.rhs;
    r.slack = c.slack();
    r.ok = c.pass;
    rows.push_back(std::move(r));
  }
  const DecodeDecomposition& d = cert.decomposition;
  if (o.format == "json") {
    std::cout << "{\"pass\":" << (cert.pass ? "true" : "false") << ",\"rate\":" << fmt9(d.rate)
              << ",\"intended\":" << d.intended << ",\"noise\":" << json_str(d.noise.str())
              << ",\"joint\":" << json_str(d.joint.str())
              << ",\"subtracted\":" << json_str(d.subtracted.str())
              << ",\"checks\":" << constraints_json(rows) << "}\n";
  } else if (o.format == "csv") {
    print_constraints(rows, o.format);
  } else {
    std::cout << "rate = " << fmt9(d.rate) << "\n"
              << "treated as noise = " << d.noise.str() << "\n"
              << "decoded jointly = " << d.joint.str() << "\n"
              << "decoded and subtracted first = " << d.subtracted.str() << "\n\n";
    print_constraints(rows, o.format);
    std::cout << "\ncertificate: " << (cert.pass ? "PASS" : "FAIL") << "\n";
  }
  return cert.pass ? 0 : 3;
}

int run_extreme(const ChannelSpec& spec, const CliOptions& o) {
  const InterferenceNetwork net = spec.network();
  const int m = net.size();
  std::vector<std::vector<int>> orderings;
  if (o.order == "all") {
    if (m > 8) throw std::invalid_argument("--order all supports at most 8 users");
    std::vector<int> ord(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) ord[i] = i + 1;
    do {
      orderings.push_back(ord);
    } while (std::next_permutation(ord.begin(), ord.end()));
  } else {
    orderings.push_back(parse_ordering(o.order));
  }

  std::vector<ExtremePoint> points;
  points.reserve(orderings.size());
  for (const auto& ord : orderings) points.push_back(successive_maximize(net, ord, solve_options(o)));

  auto strategy_str = [](const Strategy& s) {
    std::vector<std::string> cells;
    cells.reserve(s.decode_sets.size());
    for (const auto& d : s.decode_sets) cells.push_back(d.str());
    return join(cells, "|");
  };
  if (o.format == "json") {
    std::vector<std::string> items;
    for (const auto& p : points) {
      std::vector<std::string> rs, ds;
      for (double r : p.rates.values()) rs.push_back(fmt9(r));
      for (const auto& d : p.strategy.decode_sets) ds.push_back(json_str(d.str()));
      items.push_back("{\"ordering\":" + json_str(ordering_str(p.ordering)) + ",\"rates\":[" +
                      join(rs, ",") + "],\"decode_sets\":[" + join(ds, ",") + "]}");
    }
    std::cout << "{\"points\":[" << join(items, ",") << "]}\n";
    return 0;
  }
  if (o.format == "csv") {
    std::vector<std::string> header{"ordering"};
    for (int u = 1; u <= m; ++u) header.push_back("R_" + std::to_string(u));
    header.push_back("strategy");
    csv_row(header);
    for (const auto& p : points) {
      std::vector<std::string> cells{ordering_str(p.ordering)};
      for (double r : p.rates.values()) cells.push_back(fmt9(r));
      cells.push_back(strategy_str(p.strategy));
      csv_row(cells);
    }
    return 0;
  }
  for (size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (i) std::cout << "\n";
    std::cout << "ordering = " << ordering_str(p.ordering) << "\n";
    for (int u = 1; u <= m; ++u)
      std::cout << "R_" << u << " = " << fmt9(p.rates.at(u)) << "\n";
    std::cout << "decode sets = " << strategy_str(p.strategy) << "\n";
  }
  return 0;
}

int run_classify(const ChannelSpec& spec, const CliOptions& o) {
  const InterferenceNetwork net = spec.network();
  const auto rel = one_sided_relabeling(net);
  const bool one = rel.has_value();
  const bool strong = one && is_strong_one_sided(net);
  const std::string order = one ? ordering_str(rel->order) : "-";
  const std::string unique = one ? (rel->unique ? "yes" : "no") : "-";
  if (o.format == "json") {
    std::cout << "{\"one_sided\":" << (one ? "true" : "false") << ",\"relabeling\":"
              << (one ? json_str(order) : "null") << ",\"unique\":"
              << (one ? (rel->unique ? "true" : "false") : "null")
              << ",\"strong\":" << (strong ? "true" : "false") << "}\n";
    return 0;
  }
  if (o.format == "csv") {
    csv_row({"one_sided", "relabeling", "unique", "strong"});
    csv_row({one ? "yes" : "no", order, unique, strong ? "yes" : "no"});
    return 0;
  }
  std::cout << "one-sided = " << (one ? "yes" : "no") << "\n";
  if (one) {
    std::cout << "relabeling = " << order << "\n"
              << "relabeling unique = " << unique << "\n";
  }
  std::cout << "strong = " << (strong ? "yes" : "no") << "\n";
  return 0;
}

int run_member(const ChannelSpec& spec, const CliOptions& o) {
  const InterferenceNetwork net = spec.network();
  const MembershipResult r = strong_one_sided_membership(net, spec.rates(), o.tol);
  if (o.format == "json") {
    std::cout << "{\"member\":" << (r.member ? "true" : "false")
              << ",\"receiver\":" << r.receiver << ",\"subset\":" << json_str(r.subset.str())
              << "}\n";
    return 0;
  }
  if (o.format == "csv") {
    csv_row({"member", "receiver", "subset"});
    csv_row({r.member ? "yes" : "no", std::to_string(r.receiver), r.subset.str()});
    return 0;
  }
  std::cout << "member = " << (r.member ? "yes" : "no") << "\n";
  if (!r.member)
    std::cout << "violated at receiver = " << r.receiver << "\n"
              << "violating subset = " << r.subset.str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decode-or-treat-as-noise rate toolkit"};
  app.require_subcommand(1);

  CliOptions opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("spec", opt.spec_path, "channel description file (JSON)")->required();
    sub->add_option("--tol", opt.tol, "comparison tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--solver", opt.solver, "subset solver")
        ->check(CLI::IsMember({"exhaustive", "minnorm", "auto"}));
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    return sub;
  };
  add_common(app.add_subcommand("mds", "maximum decodable subset and constraint slacks"));
  add_common(app.add_subcommand("rate", "intended user's achievable rate and decomposition"));
  auto* surface = add_common(app.add_subcommand("surface", "rate surface over an interferer grid"));
  surface->add_option("--grid", opt.grid, "start:stop:step per interferer axis")->required();
  add_common(app.add_subcommand("ladder", "degraded-broadcast noise ladder"));
  add_common(app.add_subcommand("certify", "capacity certificate for the achievable rate"));
  auto* extreme = add_common(app.add_subcommand("extreme", "successively maximized rate points"));
  extreme->add_option("--order", opt.order, "user ordering like 2-1-3, or `all`");
  add_common(app.add_subcommand("classify", "one-sided / strong interference report"));
  add_common(app.add_subcommand("member", "strong one-sided capacity membership test"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const ChannelSpec spec = ChannelSpec::load(opt.spec_path);
    if (app.got_subcommand("mds")) return run_mds(spec, opt);
    if (app.got_subcommand("rate")) return run_rate(spec, opt);
    if (app.got_subcommand("surface")) return run_surface(spec, opt);
    if (app.got_subcommand("ladder")) return run_ladder(spec, opt);
    if (app.got_subcommand("certify")) return run_certify(spec, opt);
    if (app.got_subcommand("extreme")) return run_extreme(spec, opt);
    if (app.got_subcommand("classify")) return run_classify(spec, opt);
    if (app.got_subcommand("member")) return run_member(spec, opt);
    return 2;
  } catch (const SfmConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const LadderInfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
