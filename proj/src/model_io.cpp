#include "hmmaro/model_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hmmaro {

namespace {

void write_values(std::ostream& out, std::span<const double> values) {
  char buf[32];
  for (const double v : values) {
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    out << ' ' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
  }
  out << '\n';
}

struct Line {
  std::size_t number;
  std::string key;
  std::vector<std::string> fields;
};

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw std::invalid_argument("model file line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) fail(line, "bad number '" + s + "'");
  return v;
}

std::size_t parse_count(const std::string& s, std::size_t line) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) fail(line, "bad count '" + s + "'");
  return v;
}

std::vector<double> parse_values(const Line& l, std::size_t skip, std::size_t expected) {
  if (l.fields.size() != skip + expected) {
    fail(l.number, "'" + l.key + "' expects " + std::to_string(expected) + " values, got " +
                       std::to_string(l.fields.size() - std::min(skip, l.fields.size())));
  }
  std::vector<double> out;
  out.reserve(expected);
  for (std::size_t i = skip; i < l.fields.size(); ++i) out.push_back(parse_double(l.fields[i], l.number));
  return out;
}

}  // namespace

void write_model(std::ostream& out, const HmmModel& model) {
  const std::size_t n = model.n_states();
  out << "hmm-model 1\n";
  if (model.is_discrete()) {
    out << "kind discrete\n";
    out << "states " << n << '\n';
    out << "symbols " << model.discrete().alphabet_size() << '\n';
  } else {
    out << "kind gaussian_mixture\n";
    out << "states " << n << '\n';
    out << "components " << model.mixture().components << '\n';
    out << "dimension " << model.mixture().dimension << '\n';
  }
  out << "initial";
  write_values(out, model.initial);
  for (std::size_t i = 0; i < n; ++i) {
    out << "transition";
    write_values(out, model.transition.row(i));
  }
  if (model.is_discrete()) {
    for (std::size_t j = 0; j < n; ++j) {
      out << "emission";
      write_values(out, model.discrete().table.row(j));
    }
  } else {
    const auto& mix = model.mixture();
    for (std::size_t j = 0; j < n; ++j) {
      out << "weights";
      write_values(out, mix.weights.row(j));
    }
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < mix.components; ++k) {
        out << "mean " << j << ' ' << k;
        write_values(out, mix.mean(j, k));
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < mix.components; ++k) {
        out << "variance " << j << ' ' << k;
        write_values(out, mix.variance(j, k));
      }
    }
  }
}

HmmModel read_model(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    std::istringstream ls(text);
    Line l{number, {}, {}};
    if (!(ls >> l.key) || l.key.front() == '#') continue;
    for (std::string f; ls >> f;) l.fields.push_back(f);
    lines.push_back(std::move(l));
  }
  if (lines.empty() || lines.front().key != "hmm-model") throw std::invalid_argument("not an hmm-model file");
  if (lines.front().fields != std::vector<std::string>{"1"}) fail(lines.front().number, "unsupported version");

  std::map<std::string, const Line*> header;
  std::vector<const Line*> transition, emission, weights, means, variances;
  const Line* initial = nullptr;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.key == "transition") transition.push_back(&l);
    else if (l.key == "emission") emission.push_back(&l);
    else if (l.key == "weights") weights.push_back(&l);
    else if (l.key == "mean") means.push_back(&l);
    else if (l.key == "variance") variances.push_back(&l);
    else if (l.key == "initial") initial = &l;
    else if (l.key == "kind" || l.key == "states" || l.key == "symbols" || l.key == "components" || l.key == "dimension") {
      if (l.fields.size() != 1) fail(l.number, "'" + l.key + "' expects one value");
      header[l.key] = &l;
    } else {
      fail(l.number, "unknown key '" + l.key + "'");
    }
  }
  auto count = [&](const std::string& key) {
    const auto it = header.find(key);
    if (it == header.end()) throw std::invalid_argument("model file missing '" + key + "'");
    return parse_count(it->second->fields[0], it->second->number);
  };
  if (!header.count("kind")) throw std::invalid_argument("model file missing 'kind'");
  const std::string kind = header["kind"]->fields[0];
  const std::size_t n = count("states");
  if (n == 0) throw std::invalid_argument("model file declares zero states");
  if (!initial) throw std::invalid_argument("model file missing 'initial'");
  if (transition.size() != n) throw std::invalid_argument("model file needs " + std::to_string(n) + " transition rows");

  HmmModel model;
  model.initial = parse_values(*initial, 0, n);
  model.transition = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = parse_values(*transition[i], 0, n);
    std::copy(row.begin(), row.end(), model.transition.row(i).begin());
  }

  if (kind == "discrete") {
    const std::size_t k = count("symbols");
    if (emission.size() != n) throw std::invalid_argument("model file needs " + std::to_string(n) + " emission rows");
    Matrix table(n, k);
    for (std::size_t j = 0; j < n; ++j) {
      const auto row = parse_values(*emission[j], 0, k);
      std::copy(row.begin(), row.end(), table.row(j).begin());
    }
    model.emission = DiscreteEmission{std::move(table)};
  } else if (kind == "gaussian_mixture") {
    const std::size_t m = count("components");
    const std::size_t d = count("dimension");
    GaussianMixtureEmission mix(n, m, d);
    if (weights.size() != n) throw std::invalid_argument("model file needs " + std::to_string(n) + " weights rows");
    for (std::size_t j = 0; j < n; ++j) {
      const auto row = parse_values(*weights[j], 0, m);
      std::copy(row.begin(), row.end(), mix.weights.row(j).begin());
    }
    if (means.size() != n * m || variances.size() != n * m) {
      throw std::invalid_argument("model file needs " + std::to_string(n * m) + " mean and variance lines");
    }
    auto fill = [&](const std::vector<const Line*>& src, bool is_mean) {
      for (const Line* l : src) {
        if (l->fields.size() < 2) fail(l->number, "missing state/component indices");
        const std::size_t j = parse_count(l->fields[0], l->number);
        const std::size_t k = parse_count(l->fields[1], l->number);
        if (j >= n || k >= m) fail(l->number, "state/component index out of range");
        const auto values = parse_values(*l, 2, d);
        auto dst = is_mean ? mix.mean(j, k) : mix.variance(j, k);
        std::copy(values.begin(), values.end(), dst.begin());
      }
    };
    fill(means, true);
    fill(variances, false);
    model.emission = std::move(mix);
  } else {
    fail(header["kind"]->number, "unknown kind '" + kind + "'");
  }
  return model;
}

void save_model(const std::string& path, const HmmModel& model) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_model(out, model);
}

HmmModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_model(in);
}

}  // namespace hmmaro
