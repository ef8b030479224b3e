#pragma once

// The tbp command line. run() is separate from main() so tests can drive
// it with in-memory streams.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "tbp/tbp.hpp"

namespace tbp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitOverflow = 3;
inline constexpr int kExitUnstable = 10;
inline constexpr int kExitUnknown = 20;

inline LatticePoint parse_point(const std::string& s) {
  static const std::regex re(R"(\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw Error(Errc::ParseError, "bad point '" + s + "' (want x,y)");
  try {
    return {std::stoll(m[1]), std::stoll(m[2])};
  } catch (const std::out_of_range&) {
    throw Error(Errc::Overflow, "coordinate out of range in '" + s + "'");
  }
}

/// WxH -> [1,W]x[1,H]; x0..x1,y0..y1; lo..hi (square); tri:k -> {1 <= y <= x <= k}.
inline WindowPtr parse_window(const std::string& s) {
  std::smatch m;
  static const std::regex wxh(R"((\d+)x(\d+))");
  static const std::regex ranges(R"((-?\d+)\.\.(-?\d+),(-?\d+)\.\.(-?\d+))");
  static const std::regex square(R"((-?\d+)\.\.(-?\d+))");
  static const std::regex tri(R"(tri:(\d+))");
  if (std::regex_match(s, m, wxh)) return Window::rect(1, std::stoll(m[1]), 1, std::stoll(m[2]));
  if (std::regex_match(s, m, ranges))
    return Window::rect(std::stoll(m[1]), std::stoll(m[2]), std::stoll(m[3]), std::stoll(m[4]));
  if (std::regex_match(s, m, square)) return Window::square(std::stoll(m[1]), std::stoll(m[2]));
  if (std::regex_match(s, m, tri)) {
    const Int k = std::stoll(m[1]);
    if (k < 1) throw Error(Errc::ParseError, "tri:k needs k >= 1");
    PointSet pts;
    for (Int x = 1; x <= k; ++x)
      for (Int y = 1; y <= x; ++y) pts.insert({x, y});
    return Window::from_points(pts);
  }
  throw Error(Errc::ParseError, "bad window '" + s + "'");
}

/// Inline JSON, or @path to read it from a file.
inline json parse_json_arg(const std::string& s) {
  std::string text = s;
  if (!s.empty() && s[0] == '@') {
    std::ifstream in(s.substr(1));
    if (!in) throw Error(Errc::ParseError, "cannot read " + s.substr(1));
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

inline Rule parse_rule(const std::string& s) {
  auto r = rule_from_string(s);
  if (!r) throw Error(Errc::ParseError, "rule must be B, I or BI");
  return *r;
}

inline ForbidPairsAtDistance parse_forbid(const std::string& s) {
  static const std::regex re(R"((\d+)(?:@(diag|anti):(-?\d+))?)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw Error(Errc::ParseError, "bad --forbid-dist2 '" + s + "' (want D or D@diag:c or D@anti:c)");
  ForbidPairsAtDistance f{std::stoll(m[1]), std::nullopt};
  if (m[2].matched)
    f.scope = DiagonalLine{m[2] == "diag" ? DiagonalLine::Diagonal : DiagonalLine::Antidiagonal, std::stoll(m[3])};
  return f;
}

/// A periodic set from --set JSON or --construct NAME.
inline PeriodicSet periodic_arg(const std::string& set, const std::string& name) {
  if (!name.empty()) return build(name).set;
  if (set.empty()) throw Error(Errc::ParseError, "give --set or --construct");
  return parse_json_arg(set).get<PeriodicSet>();
}

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

inline void emit(Streams& io, const json& j) { io.out << j.dump() << '\n'; }

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Streams io{out, err};
  CLI::App app{"triangle bootstrap percolation toolkit", "tbp"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value configuration file");

  // classify
  auto* classify = app.add_subcommand("classify", "classify the triangle p q r");
  std::vector<std::string> tri_pts;
  classify->add_option("points", tri_pts, "three points x,y")->expected(3)->required();

  // close
  auto* closec = app.add_subcommand("close", "percolation closure of a seed in a window");
  std::string seed_arg, window_arg = "-12..13", rule_arg = "I", format_arg = "json";
  Int margin = kDefaultMargin;
  bool trace_lines = false;
  std::optional<std::uint64_t> shuffle;
  closec->add_option("--seed", seed_arg, "JSON array of points, or @file")->required();
  closec->add_option("--window", window_arg, "window (WxH, x0..x1,y0..y1, lo..hi, tri:k)")->capture_default_str();
  closec->add_option("--rule", rule_arg, "B, I or BI")->capture_default_str();
  closec->add_option("--margin", margin, "core margin for the coverage report")->capture_default_str();
  closec->add_option("--format", format_arg, "json, ascii or svg")->capture_default_str();
  closec->add_flag("--trace-lines", trace_lines, "emit trace steps as JSON lines before the result");
  closec->add_option("--shuffle-seed", shuffle, "process points in a seeded random order");

  // search
  auto* searchc = app.add_subcommand("search", "exhaustive search for pattern-free subsets");
  std::string domain_arg, srule_arg = "B", pin_in_arg, pin_out_arg;
  std::vector<std::string> require_pair, forbid;
  std::optional<int> enumerate_size;
  bool count_all = false, diagnostics = false, render_reps = false;
  unsigned workers = 1;
  int split_depth = 8;
  searchc->add_option("--domain", domain_arg, "domain (WxH, x0..x1,y0..y1, lo..hi, tri:k)")->required();
  searchc->add_option("--rule", srule_arg, "B, I or BI")->capture_default_str();
  searchc->add_option("--require-pair", require_pair, "h or v: require a consecutive pair")->expected(0, 2);
  searchc->add_option("--forbid-dist2", forbid, "forbid pairs at squared distance D[@diag:c|@anti:c]");
  searchc->add_option("--pin-in", pin_in_arg, "JSON array of points forced in");
  searchc->add_option("--pin-out", pin_out_arg, "JSON array of points forced out");
  auto* en = searchc->add_option("--enumerate-size", enumerate_size, "enumerate all sets of this size");
  searchc->add_flag("--count-all", count_all, "count every feasible set")->excludes(en);
  searchc->add_option("--workers", workers, "worker threads")->envname("TBP_WORKERS")->capture_default_str();
  searchc->add_option("--split-depth", split_depth, "task split depth")->capture_default_str();
  searchc->add_flag("--diagnostics", diagnostics, "include node count and time in the JSON");
  searchc->add_flag("--render", render_reps, "also draw representatives on the error stream");

  // verify
  auto* verifyc = app.add_subcommand("verify", "decide stability of a periodic set");
  std::string vset, vname, vrule = "BI";
  Int cap_factor = 8;
  verifyc->add_option("--set", vset, "{\"m\":..,\"residues\":[..]} or @file");
  verifyc->add_option("--construct", vname, "named construction");
  verifyc->add_option("--rule", vrule, "B, I or BI")->capture_default_str();
  verifyc->add_option("--cap-factor", cap_factor, "witness search cap in periods")->capture_default_str();

  // construct
  auto* constructc = app.add_subcommand("construct", "emit a named set");
  std::string cname, cwindow = "0..30", delta_arg = "1/4", digits_arg = "sqrt2";
  Int cn = 10;
  int horizon = 16;
  constructc->add_option("name", cname,
                         "NZ2(n), S29, B112, In(n), J14, J12, I2, axes-ray, density-subset, aperiodic")
      ->required();
  constructc->add_option("--window", cwindow, "window for axes-ray")->capture_default_str();
  constructc->add_option("--delta", delta_arg, "density for density-subset")->capture_default_str();
  constructc->add_option("--n", cn, "half-width for density-subset")->capture_default_str();
  constructc->add_option("--horizon", horizon, "steps for aperiodic")->capture_default_str();
  constructc->add_option("--digits", digits_arg, "sqrt2 or a 0/1 string")->capture_default_str();

  // witness
  auto* witnessc = app.add_subcommand("witness", "maximality witnesses");
  witnessc->require_subcommand(1);
  auto* win = witnessc->add_subcommand("in", "I_n plus (0, a)");
  Int wn = 7, wa = 1;
  win->add_option("--n", wn, "period n of I_n")->required();
  win->add_option("--a", wa, "added point is (0, a), 0 < a < n")->required();
  auto* ws29 = witnessc->add_subcommand("s29", "S29 plus one point");
  std::string extra_arg;
  ws29->add_option("--extra", extra_arg, "x,y")->required();

  // density
  auto* densityc = app.add_subcommand("density", "exact or windowed density");
  std::string dset, dname, dwindow;
  densityc->add_option("--set", dset, "periodic set or cell set JSON, or @file");
  densityc->add_option("--construct", dname, "named construction");
  densityc->add_option("--window", dwindow, "also count inside this window");

  // render
  auto* renderc = app.add_subcommand("render", "draw a set");
  std::string rset, rname, rwindow, rformat = "ascii";
  renderc->add_option("--set", rset, "periodic set or cell set JSON, or @file");
  renderc->add_option("--construct", rname, "named construction");
  renderc->add_option("--window", rwindow, "window for periodic sets");
  renderc->add_option("--format", rformat, "ascii or svg")->capture_default_str();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*classify) {
      const auto t = classify_triangle(parse_point(tri_pts[0]), parse_point(tri_pts[1]), parse_point(tri_pts[2]));
      emit(io, t);
    } else if (*closec) {
      const Rule rule = parse_rule(rule_arg);
      auto w = parse_window(window_arg);
      const auto seed = parse_json_arg(seed_arg).get<PointSet>();
      for (const auto& p : seed)
        if (!w->contains(p)) err << "note: seed point " << to_string(p) << " lies outside the window, dropped\n";
      CloseOptions opt;
      opt.shuffle_seed = shuffle;
      auto res = close(seed, w, rule, opt);
      bool covered = false;
      if (w->is_rect() && w->bounds().width() > 2 * margin && w->bounds().height() > 2 * margin)
        covered = res.set.covers(*shrink(*w, margin));
      if (format_arg == "ascii" || format_arg == "svg") {
        out << render(res.set, format_arg == "svg" ? RenderFormat::Svg : RenderFormat::Ascii);
      } else if (format_arg == "json") {
        if (trace_lines)
          for (const auto& s : res.trace) emit(io, s);
        json j{{"window", window_to_json(*w)},       {"rule", to_string(rule)},
               {"seed", seed},                       {"closure", res.set.points()},
               {"size", res.set.size()},             {"margin", margin},
               {"core_covered", covered}};
        if (!trace_lines) j["trace"] = res.trace;
        emit(io, j);
      } else {
        throw Error(Errc::ParseError, "format must be json, ascii or svg");
      }
    } else if (*searchc) {
      SearchProblem p;
      p.domain = parse_window(domain_arg);
      p.rule = parse_rule(srule_arg);
      if (searchc->count("--require-pair")) {
        if (require_pair.empty()) require_pair.push_back("h");
        for (const auto& d : require_pair) {
          if (d.empty() || d == "h" || d == "horizontal") p.constraints.push_back(RequireConsecutivePair{Direction::Horizontal});
          else if (d == "v" || d == "vertical") p.constraints.push_back(RequireConsecutivePair{Direction::Vertical});
          else throw Error(Errc::ParseError, "--require-pair takes h or v");
        }
      }
      for (const auto& f : forbid) p.constraints.push_back(parse_forbid(f));
      if (!pin_in_arg.empty()) p.constraints.push_back(PinIn{parse_json_arg(pin_in_arg).get<PointSet>()});
      if (!pin_out_arg.empty()) p.constraints.push_back(PinOut{parse_json_arg(pin_out_arg).get<PointSet>()});
      if (enumerate_size) p.objective = EnumerateSize{*enumerate_size};
      else if (count_all) p.objective = CountAll{};
      SearchOptions opt;
      opt.workers = workers;
      opt.split_depth = split_depth;
      const auto r = search(p, opt);
      err << "nodes_explored " << r.nodes_explored << " elapsed " << r.elapsed.count() << "s workers " << workers << '\n';
      if (render_reps)
        for (const auto& s : r.representatives) err << render(s, RenderFormat::Ascii) << '\n';
      emit(io, search_result_to_json(r, diagnostics));
    } else if (*verifyc) {
      const PeriodicSet p = periodic_arg(vset, vname);
      const Rule rule = parse_rule(vrule);
      VerifyOptions opt;
      if (cap_factor < 1) throw Error(Errc::BadParameter, "--cap-factor must be positive");
      opt.cap_factor = cap_factor;
      const auto v = verify_stability(p, rule, opt);
      json j = v;
      j["set"] = p;
      j["rule"] = to_string(rule);
      emit(io, j);
      return v.status == Verdict::Stable ? kExitOk : v.status == Verdict::Unstable ? kExitUnstable : kExitUnknown;
    } else if (*constructc) {
      if (cname == "axes-ray") {
        auto rep = axes_ray_seed(parse_window(cwindow));
        json j = cellset_to_json(rep.set);
        j["min_area2"] = rep.min_area2;
        j["stable_I"] = rep.stable_i;
        j["stable_B"] = rep.stable_b;
        emit(io, j);
      } else if (cname == "density-subset") {
        const auto s = density_achieving_subset(rational_from_string(delta_arg), cn);
        json j = cellset_to_json(s);
        j["count"] = s.size();
        emit(io, j);
      } else if (cname == "aperiodic") {
        std::vector<int> digits;
        if (digits_arg == "sqrt2") {
          digits = sqrt2_minus_1_digits(static_cast<std::size_t>(std::max(horizon, 0)));
        } else {
          for (char ch : digits_arg) {
            if (ch != '0' && ch != '1') throw Error(Errc::ParseError, "--digits must be sqrt2 or a 0/1 string");
            digits.push_back(ch - '0');
          }
        }
        const auto s = aperiodic_seed_1d(fixed_digits(digits), horizon);
        emit(io, json{{"digits", s.digits},
                      {"x", s.xs},
                      {"points", s.points},
                      {"safe_interior", {s.interior_lo, s.interior_hi}},
                      {"no_three_consecutive", s.no_three_consecutive},
                      {"saturated", s.saturated}});
      } else {
        const auto c = build(cname);
        json exp = json::object();
        for (const auto& [r, v] : c.expected.verdicts) exp[to_string(r)] = to_string(v);
        emit(io, json{{"name", c.name},
                      {"set", c.set},
                      {"density", rational_to_json(density(c.set))},
                      {"gamma", rational_to_json(gamma(c.set))},
                      {"expected_verdicts", exp}});
      }
    } else if (*witnessc) {
      if (*win) {
        if (gcd(wn, wa) != 1 && wn == 9) {
          const auto rep = in_maximality_cascade(wn, wa);
          emit(io, json{{"n", wn},
                        {"a", wa},
                        {"window", window_to_json(*rep.window)},
                        {"core", window_to_json(*rep.core)},
                        {"percolates", rep.percolates},
                        {"trace", rep.trace}});
        } else {
          const auto t = in_maximality_witness(wn, wa);
          emit(io, json{{"n", wn}, {"a", wa}, {"triangle", t}});
        }
      } else {
        const auto rep = s29_maximality_check(parse_point(extra_arg));
        json j{{"extra", rep.extra}, {"percolates_B", rep.percolates_b}, {"percolates_I", rep.percolates_i}};
        j["five_in_row"] = rep.five_in_row ? json(*rep.five_in_row) : json(nullptr);
        j["unimodular"] = rep.unimodular ? json(*rep.unimodular) : json(nullptr);
        emit(io, j);
      }
    } else if (*densityc) {
      json j;
      json parsed = dset.empty() ? json() : parse_json_arg(dset);
      if (!dname.empty() || parsed.contains("m")) {
        const PeriodicSet p = dname.empty() ? parsed.get<PeriodicSet>() : build(dname).set;
        j = json{{"set", p}, {"density", rational_to_json(density(p))}, {"gamma", rational_to_json(gamma(p))}};
        if (!dwindow.empty()) {
          auto w = parse_window(dwindow);
          Int c = 0;
          for (const auto& q : w->points()) c += p.contains(q) ? 1 : 0;
          j["window"] = json{{"cells", w->size()}, {"count", c},
                             {"empirical", rational_to_json(Rational(c, static_cast<Int>(w->size())))}};
        }
      } else if (!parsed.is_null()) {
        const CellSet s = cellset_from_json(parsed);
        j = json{{"cells", s.window()->size()},
                 {"count", s.size()},
                 {"empirical", rational_to_json(Rational(static_cast<Int>(s.size()), static_cast<Int>(s.window()->size())))}};
      } else {
        throw Error(Errc::ParseError, "give --set or --construct");
      }
      emit(io, j);
    } else if (*renderc) {
      const RenderFormat f = rformat == "svg" ? RenderFormat::Svg : RenderFormat::Ascii;
      if (rformat != "svg" && rformat != "ascii") throw Error(Errc::ParseError, "format must be ascii or svg");
      json parsed = rset.empty() ? json() : parse_json_arg(rset);
      if (!rname.empty() || parsed.contains("m")) {
        const PeriodicSet p = rname.empty() ? parsed.get<PeriodicSet>() : build(rname).set;
        if (rwindow.empty()) throw Error(Errc::ParseError, "periodic sets need --window");
        auto w = parse_window(rwindow);
        out << render(CellSet::from_points(w, [&] {
                        PointSet s;
                        for (const auto& q : w->points())
                          if (p.contains(q)) s.insert(q);
                        return s;
                      }()),
                      f);
      } else if (!parsed.is_null()) {
        out << render(cellset_from_json(parsed), f);
      } else {
        throw Error(Errc::ParseError, "give --set or --construct");
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::Overflow ? kExitOverflow : kExitUsage;
  } catch (const json::exception& e) {
    err << "error: ParseError: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: Overflow: " << e.what() << '\n';
    return kExitOverflow;
  }
  return kExitOk;
}

}  // namespace tbp::cli
