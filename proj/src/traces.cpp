#include <algorithm>
#include <atomic>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "dynaut/afw.hpp"
#include "dynaut/error.hpp"
#include "dynaut/fsa.hpp"
#include "dynaut/traces.hpp"

namespace dynaut {

using nlohmann::json;

void TraceCorpus::add(std::string id, Trace trace) {
  if (std::any_of(entries_.begin(), entries_.end(), [&](const CorpusEntry& e) { return e.id == id; }))
    throw InputError("duplicate trace id '" + id + "'");
  entries_.push_back(CorpusEntry{std::move(id), std::move(trace)});
}

std::vector<std::string> TraceCorpus::ids() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) out.push_back(e.id);
  return out;
}

namespace {

[[noreturn]] void line_error(std::size_t line, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ": " + msg);
}

Trace trace_from_json(const json& j, std::size_t line) {
  if (!j.is_array()) line_error(line, "trace must be an array of letters");
  if (j.empty()) line_error(line, "empty trace");
  std::vector<Letter> letters;
  for (const auto& letter : j) {
    if (!letter.is_array()) line_error(line, "letter must be an array of atom names");
    Letter l;
    for (const auto& atom : letter) {
      if (!atom.is_string()) line_error(line, "atom must be a string, got " + atom.dump());
      const auto& name = atom.get_ref<const std::string&>();
      if (!is_valid_atom_name(name)) line_error(line, "invalid atom name '" + name + "'");
      l.insert(name);
    }
    letters.push_back(std::move(l));
  }
  return Trace(std::move(letters));
}

json trace_to_json(const Trace& t) {
  json letters = json::array();
  for (const auto& letter : t.letters()) letters.push_back(json(std::vector<std::string>(letter.begin(), letter.end())));
  return letters;
}

}  // namespace

TraceCorpus read_traces(std::istream& in) {
  TraceCorpus corpus;
  std::string text;
  std::size_t line = 0;
  std::size_t anonymous = 0;
  while (std::getline(in, text)) {
    ++line;
    auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos || text[first] == '#') continue;
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      line_error(line, std::string("malformed JSON: ") + e.what());
    }
    std::string id;
    const json* body = &j;
    if (j.is_object()) {
      if (!j.contains("trace")) line_error(line, "record has no \"trace\" field");
      body = &j["trace"];
      if (j.contains("id")) {
        if (!j["id"].is_string()) line_error(line, "\"id\" must be a string");
        id = j["id"].get<std::string>();
      }
    }
    if (id.empty()) id = "t" + std::to_string(anonymous);
    ++anonymous;
    Trace t = trace_from_json(*body, line);
    try {
      corpus.add(id, std::move(t));
    } catch (const InputError& e) {
      line_error(line, e.what());
    }
  }
  return corpus;
}

TraceCorpus read_traces_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open trace file '" + path + "'");
  try {
    return read_traces(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_traces(const TraceCorpus& c, std::ostream& out) {
  for (const auto& e : c.entries()) {
    json record;
    record["id"] = e.id;
    record["trace"] = trace_to_json(e.trace);
    out << record.dump() << '\n';
  }
}

std::optional<Backend> parse_backend(const std::string& name) {
  if (name == "oracle") return Backend::Oracle;
  if (name == "afw") return Backend::Afw;
  if (name == "dfa") return Backend::Dfa;
  return std::nullopt;
}

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::Oracle:
      return "oracle";
    case Backend::Afw:
      return "afw";
    case Backend::Dfa:
      return "dfa";
  }
  return "?";
}

FilterResult filter_traces(const Formula& f, const TraceCorpus& c, Backend backend, std::size_t jobs) {
  const auto start = std::chrono::steady_clock::now();

  std::optional<Formula> core;
  std::optional<Afw> afw;
  std::optional<Dfa> dfa;
  switch (backend) {
    case Backend::Oracle:
      core = nnf(desugar(f));
      break;
    case Backend::Afw:
      afw = compile_afw(f);
      break;
    case Backend::Dfa:
      dfa = compile_min_dfa(f);
      break;
  }

  std::vector<Verdict> verdicts(c.size());
  auto check = [&](std::size_t i) {
    const auto& e = c[i];
    Verdict v{e.id, false, std::nullopt};
    switch (backend) {
      case Backend::Oracle:
        v.accepted = eval(*core, e.trace, 0);
        break;
      case Backend::Afw:
        v.accepted = afw_accepts(*afw, e.trace);
        break;
      case Backend::Dfa:
        v.first_failure = first_failure(*dfa, e.trace);
        v.accepted = !v.first_failure;
        break;
    }
    verdicts[i] = std::move(v);
  };

  jobs = std::max<std::size_t>(1, std::min(jobs, c.size()));
  if (jobs == 1) {
    for (std::size_t i = 0; i < c.size(); ++i) check(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        try {
          for (std::size_t i = next++; i < c.size(); i = next++) check(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
  }

  FilterResult result;
  result.report.backend = backend;
  result.report.total = c.size();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (verdicts[i].accepted) {
      ++result.report.accepted;
      result.accepted.add(c[i].id, c[i].trace);
    } else {
      ++result.report.rejected;
    }
  }
  result.report.verdicts = std::move(verdicts);
  result.report.wall_time = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace dynaut
