#include "dsw/manifold_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "dsw/error.hpp"

namespace dsw {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Line {
  std::size_t number = 0;
  std::string text;
};

struct Section {
  std::string name;
  std::size_t number = 0;
  std::vector<Line> lines;
};

class Reader {
public:
  Reader(std::string_view text, std::string source) : source_(std::move(source)) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
      ++n;
      std::string_view line = raw;
      if (auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
      line = trim(line);
      if (line.empty())
        continue;
      if (line.front() == '[') {
        if (line.back() != ']')
          fail(n, "malformed section header '" + std::string(line) + "'");
        sections_.push_back({std::string(trim(line.substr(1, line.size() - 2))), n, {}});
        continue;
      }
      if (sections_.empty())
        fail(n, "content before the first section");
      sections_.back().lines.push_back({n, std::string(line)});
    }
  }

  const std::vector<Section>& sections() const { return sections_; }

  [[noreturn]] void fail(std::size_t line, const std::string& msg) const {
    throw Error(ErrorKind::load, source_ + ":" + std::to_string(line) + ": " + msg);
  }

  // Runs `f` and rewraps any dsw::Error as a load error at `line`.
  template <class F>
  auto at(std::size_t line, F&& f) const -> decltype(f()) {
    try {
      return f();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::load)
        throw;
      fail(line, e.what());
    }
  }

  Int integer(const Line& l, std::string_view s) const {
    s = trim(s);
    Int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
      fail(l.number, "expected an integer, got '" + std::string(s) + "'");
    return v;
  }

  std::vector<Int> row(const Line& l, std::string_view s) const {
    std::vector<Int> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok)
      out.push_back(integer(l, tok));
    return out;
  }

  bool boolean(const Line& l, std::string_view s) const {
    s = trim(s);
    if (s == "true")
      return true;
    if (s == "false")
      return false;
    fail(l.number, "expected true or false, got '" + std::string(s) + "'");
  }

  std::pair<std::string, std::string> key_value(const Line& l) const {
    const auto eq = l.text.find('=');
    if (eq == std::string::npos)
      fail(l.number, "expected 'key = value', got '" + l.text + "'");
    return {std::string(trim(std::string_view(l.text).substr(0, eq))),
            std::string(trim(std::string_view(l.text).substr(eq + 1)))};
  }

  // key = value pairs of a section; duplicates and unknown keys are errors.
  std::map<std::string, Line> fields(const Section& s, std::initializer_list<std::string_view> allowed) const {
    std::map<std::string, Line> out;
    for (const auto& l : s.lines) {
      auto [k, v] = key_value(l);
      bool ok = false;
      for (auto a : allowed)
        ok = ok || a == k;
      if (!ok)
        fail(l.number, "unknown key '" + k + "' in [" + s.name + "]");
      if (!out.emplace(k, Line{l.number, v}).second)
        fail(l.number, "duplicate key '" + k + "'");
    }
    return out;
  }

  const Line& require(const std::map<std::string, Line>& f, const Section& s, const std::string& key) const {
    auto it = f.find(key);
    if (it == f.end())
      fail(s.number, "[" + s.name + "] is missing '" + key + "'");
    return it->second;
  }

  const std::string& source() const { return source_; }

private:
  std::string source_;
  std::vector<Section> sections_;
};

std::string join(const std::vector<Int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

} // namespace

ManifoldData parse_manifold(std::string_view text, const std::string& source, const ValidationOptions& opts) {
  Reader r(text, source);
  ManifoldData m;
  bool seen_manifold = false, seen_form = false, seen_w2 = false;
  std::size_t form_line = 0, w2_line = 0;
  std::vector<std::vector<Int>> gram;
  std::vector<std::uint8_t> bits;
  std::vector<std::size_t> spinc_lines;

  for (const auto& s : r.sections()) {
    if (s.name == "manifold") {
      if (seen_manifold)
        r.fail(s.number, "duplicate [manifold] section");
      seen_manifold = true;
      auto f = r.fields(s, {"name", "chi", "sigma", "b_plus", "sw_simple_type", "consistency"});
      m.name = r.require(f, s, "name").text;
      const auto& chi = r.require(f, s, "chi");
      m.euler_chi = r.integer(chi, chi.text);
      const auto& sigma = r.require(f, s, "sigma");
      m.signature_sigma = r.integer(sigma, sigma.text);
      const auto& bp = r.require(f, s, "b_plus");
      m.b_plus = r.integer(bp, bp.text);
      const auto& st = r.require(f, s, "sw_simple_type");
      m.sw_simple_type = r.boolean(st, st.text);
      if (auto it = f.find("consistency"); it != f.end()) {
        if (it->second.text == "synthetic")
          m.consistency = Consistency::synthetic;
        else if (it->second.text == "topological")
          m.consistency = Consistency::topological;
        else
          r.fail(it->second.number, "consistency must be topological or synthetic");
      }
    } else if (s.name == "form") {
      if (seen_form)
        r.fail(s.number, "duplicate [form] section");
      seen_form = true;
      form_line = s.number;
      if (s.lines.empty())
        r.fail(s.number, "[form] is missing 'rank'");
      auto [k, v] = r.key_value(s.lines.front());
      if (k != "rank")
        r.fail(s.lines.front().number, "[form] must start with 'rank = n'");
      const Int rank = r.integer(s.lines.front(), v);
      if (rank < 0)
        r.fail(s.lines.front().number, "negative rank");
      if (static_cast<Int>(s.lines.size()) - 1 != rank)
        r.fail(s.number, "[form] declares rank " + std::to_string(rank) + " but has " +
                             std::to_string(s.lines.size() - 1) + " gram rows");
      for (std::size_t i = 1; i < s.lines.size(); ++i) {
        gram.push_back(r.row(s.lines[i], s.lines[i].text));
        if (static_cast<Int>(gram.back().size()) != rank)
          r.fail(s.lines[i].number, "gram row has " + std::to_string(gram.back().size()) + " entries, expected " +
                                        std::to_string(rank));
      }
      for (std::size_t i = 0; i < gram.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
          if (gram[i][j] != gram[j][i])
            r.fail(s.lines[i + 1].number, "gram matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                                              std::to_string(j + 1) + ")");
      m.form = r.at(s.number, [&] { return IntersectionForm(gram); });
    } else if (s.name == "w2") {
      if (seen_w2)
        r.fail(s.number, "duplicate [w2] section");
      seen_w2 = true;
      w2_line = s.number;
      if (s.lines.size() > 1)
        r.fail(s.lines[1].number, "[w2] takes a single bit row");
      if (!s.lines.empty())
        for (Int b : r.row(s.lines[0], s.lines[0].text)) {
          if (b != 0 && b != 1)
            r.fail(s.lines[0].number, "w2 entries must be 0 or 1");
          bits.push_back(static_cast<std::uint8_t>(b));
        }
    } else if (s.name == "spinc") {
      auto f = r.fields(s, {"c1", "sw"});
      const auto& c1 = r.require(f, s, "c1");
      const auto& sw = r.require(f, s, "sw");
      m.spinc_entries.push_back({LatticeVector(r.row(c1, c1.text)), r.integer(sw, sw.text)});
      spinc_lines.push_back(s.number);
    } else {
      r.fail(s.number, "unknown section [" + s.name + "]");
    }
  }
  if (!seen_manifold)
    r.fail(1, "missing [manifold] section");
  if (!seen_form)
    r.fail(1, "missing [form] section");
  if (!seen_w2)
    r.fail(1, "missing [w2] section");
  m.w2 = Mod2Class(bits);

  // Re-check every invariant, pointing at the most specific line available.
  if (bits.size() != m.rank())
    r.fail(w2_line, "w2 has " + std::to_string(bits.size()) + " bits, rank is " + std::to_string(m.rank()));
  for (std::size_t k = 0; k < m.spinc_entries.size(); ++k)
    if (m.spinc_entries[k].c1.size() != m.rank())
      r.fail(spinc_lines[k], "c1 has " + std::to_string(m.spinc_entries[k].c1.size()) + " entries, rank is " +
                                 std::to_string(m.rank()));
  for (std::size_t k = 0; k < m.spinc_entries.size(); ++k)
    if (!is_characteristic(m.form, m.spinc_entries[k].c1))
      r.fail(spinc_lines[k], "c1 = " + to_string(m.spinc_entries[k].c1) + " is not characteristic");
  const auto errors = validation_errors(m, opts);
  if (!errors.empty()) {
    std::string msg = errors.front();
    for (std::size_t i = 1; i < errors.size(); ++i)
      msg += "; " + errors[i];
    r.fail(form_line, msg);
  }
  return m;
}

std::string serialize(const ManifoldData& m) {
  std::ostringstream os;
  os << "[manifold]\n";
  os << "name = " << m.name << '\n';
  os << "chi = " << m.euler_chi << '\n';
  os << "sigma = " << m.signature_sigma << '\n';
  os << "b_plus = " << m.b_plus << '\n';
  os << "sw_simple_type = " << (m.sw_simple_type ? "true" : "false") << '\n';
  if (m.consistency == Consistency::synthetic)
    os << "consistency = synthetic\n";
  os << "\n[form]\nrank = " << m.rank() << '\n';
  for (const auto& row : m.form.gram())
    os << join(row) << '\n';
  os << "\n[w2]\n";
  std::vector<Int> bits(m.w2.bits.begin(), m.w2.bits.end());
  os << join(bits) << '\n';
  for (const auto& e : m.spinc_entries)
    os << "\n[spinc]\nc1 = " << join(e.c1.coords) << "\nsw = " << e.sw << '\n';
  return os.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::load, "cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ManifoldData load_manifold(const std::filesystem::path& path, const ValidationOptions& opts) {
  return parse_manifold(read_file(path), path.string(), opts);
}

KMData parse_km(std::string_view text, const std::string& source) {
  Reader r(text, source);
  KMData km;
  bool seen = false;
  for (const auto& s : r.sections()) {
    if (s.name == "km") {
      if (seen)
        r.fail(s.number, "duplicate [km] section");
      seen = true;
      auto f = r.fields(s, {"w"});
      const auto& w = r.require(f, s, "w");
      km.w = LatticeVector(r.row(w, w.text));
    } else if (s.name == "term") {
      auto f = r.fields(s, {"a", "K"});
      const auto& a = r.require(f, s, "a");
      const auto& k = r.require(f, s, "K");
      Rational coeff = r.at(a.number, [&] { return parse_rational(a.text); });
      km.terms.push_back({coeff, LatticeVector(r.row(k, k.text))});
    } else {
      r.fail(s.number, "unknown section [" + s.name + "]");
    }
  }
  if (!seen)
    r.fail(1, "missing [km] section");
  return km;
}

KMData load_km(const std::filesystem::path& path) { return parse_km(read_file(path), path.string()); }

std::string serialize(const KMData& km) {
  std::ostringstream os;
  os << "[km]\nw = " << join(km.w.coords) << '\n';
  for (const auto& t : km.terms)
    os << "\n[term]\na = " << to_string(t.a) << "\nK = " << join(t.k.coords) << '\n';
  return os.str();
}

FitProblem parse_fit_problem(std::string_view text, const std::filesystem::path& base_dir,
                             const std::string& source) {
  Reader r(text, source);
  FitProblem problem;
  bool seen_fit = false;
  struct Pending {
    std::size_t line;
    std::string label;
    ManifoldData manifold;
    LatticeVector w, lambda;
    bool table;
    std::optional<std::vector<std::string>> lhs;
    std::size_t lhs_line = 0;
  };
  std::vector<Pending> pending;

  for (const auto& s : r.sections()) {
    if (s.name == "fit") {
      if (seen_fit)
        r.fail(s.number, "duplicate [fit] section");
      if (!pending.empty())
        r.fail(s.number, "[fit] must precede the observations");
      seen_fit = true;
      auto f = r.fields(s, {"delta", "m"});
      const auto& d = r.require(f, s, "delta");
      const auto& m = r.require(f, s, "m");
      problem.delta = r.integer(d, d.text);
      problem.m = r.integer(m, m.text);
      if (problem.delta < 0 || problem.m < 0 || problem.m > problem.delta / 2)
        r.fail(s.number, "need 0 <= m <= floor(delta/2)");
    } else if (s.name == "observation") {
      auto f = r.fields(s, {"label", "manifold", "w", "lambda", "lhs"});
      Pending p;
      p.line = s.number;
      const auto& mf = r.require(f, s, "manifold");
      p.manifold = load_manifold(base_dir / mf.text);
      p.label = f.contains("label") ? f.at("label").text : mf.text;
      const auto& w = r.require(f, s, "w");
      p.w = LatticeVector(r.row(w, w.text));
      const auto& l = r.require(f, s, "lambda");
      p.lambda = LatticeVector(r.row(l, l.text));
      if (p.w.size() != p.manifold.rank())
        r.fail(w.number, "w has " + std::to_string(p.w.size()) + " entries, rank is " +
                             std::to_string(p.manifold.rank()));
      if (p.lambda.size() != p.manifold.rank())
        r.fail(l.number, "lambda has " + std::to_string(p.lambda.size()) + " entries, rank is " +
                             std::to_string(p.manifold.rank()));
      const auto& lhs = r.require(f, s, "lhs");
      if (lhs.text == "witten")
        p.table = false;
      else if (lhs.text == "table")
        p.table = true;
      else
        r.fail(lhs.number, "lhs must be witten or table");
      pending.push_back(std::move(p));
    } else if (s.name == "lhs") {
      if (pending.empty() || !pending.back().table || pending.back().lhs)
        r.fail(s.number, "[lhs] must follow an observation with lhs = table");
      std::vector<std::string> lines;
      for (const auto& l : s.lines)
        lines.push_back(l.text);
      pending.back().lhs = lines;
      pending.back().lhs_line = s.number;
    } else {
      r.fail(s.number, "unknown section [" + s.name + "]");
    }
  }
  if (!seen_fit)
    r.fail(1, "missing [fit] section");
  if (pending.empty())
    r.fail(1, "no [observation] sections");

  const Int total = problem.delta - 2 * problem.m;
  for (auto& p : pending) {
    if (!p.table) {
      problem.observations.push_back(r.at(p.line, [&] {
        return witten_observation(p.label, p.manifold, p.w, p.lambda, problem.delta, problem.m);
      }));
      continue;
    }
    if (!p.lhs)
      r.fail(p.line, "lhs = table needs a following [lhs] section");
    const auto cap = static_cast<std::uint32_t>(total + 1);
    FormalSeries series = r.at(p.lhs_line, [&] { return parse_series_body(*p.lhs, p.manifold.rank(), cap); });
    HomogeneousPolynomial poly =
        r.at(p.lhs_line, [&] { return HomogeneousPolynomial(series, static_cast<std::uint32_t>(total)); });
    problem.observations.push_back(Observation{p.label, std::move(p.manifold), std::move(p.w),
                                               std::move(p.lambda), std::move(poly), LhsSource::user_table});
  }
  return problem;
}

FitProblem load_fit_problem(const std::filesystem::path& path) {
  return parse_fit_problem(read_file(path), path.parent_path(), path.string());
}

LatticeVector parse_vector_csv(std::string_view text) {
  std::vector<Int> out;
  text = trim(text);
  if (text.empty())
    throw Error(ErrorKind::invalid_argument, "empty vector");
  std::size_t pos = 0;
  while (true) {
    auto comma = text.find(',', pos);
    std::string_view tok = trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    Int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || p != tok.data() + tok.size())
      throw Error(ErrorKind::invalid_argument, "bad vector component '" + std::string(tok) + "' in '" +
                                                   std::string(text) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos)
      break;
    pos = comma + 1;
  }
  return LatticeVector(std::move(out));
}

} // namespace dsw
