// Copyright 2026 The FCD Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <thread>

#include "fcd/analysis.hpp"
#include "fcd/errors.hpp"
#include "fcd/similarity.hpp"

namespace fcd {
namespace {

bool needs_quotes(std::string_view field) {
  return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

void write_field(std::ostream& out, std::string_view field) {
  if (!needs_quotes(field)) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

// Splits one CSV record. Quoted fields may contain commas and doubled quotes
// but not line breaks.
std::vector<std::string> parse_record(std::string_view line,
                                      std::string_view source,
                                      std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  std::size_t i = 0;
  while (true) {
    field.clear();
    if (i < line.size() && line[i] == '"') {
      ++i;
      while (true) {
        if (i >= line.size()) {
          throw FormatError(std::string(source) + ":" + std::to_string(line_no) +
                            ": unterminated quoted field");
        }
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        field.push_back(line[i++]);
      }
      if (i < line.size() && line[i] != ',') {
        throw FormatError(std::string(source) + ":" + std::to_string(line_no) +
                          ": text after closing quote");
      }
    } else {
      const auto comma = line.find(',', i);
      const auto end = comma == std::string_view::npos ? line.size() : comma;
      field.assign(line.substr(i, end - i));
      i = end;
    }
    fields.push_back(field);
    if (i >= line.size()) return fields;
    ++i;  // comma
  }
}

}  // namespace

std::string_view measure_name(Measure m) noexcept {
  return m == Measure::kFcd ? "fcd" : "ncd";
}

std::optional<Measure> parse_measure(std::string_view name) noexcept {
  if (name == "fcd") return Measure::kFcd;
  if (name == "ncd") return Measure::kNcd;
  return std::nullopt;
}

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  const auto count = std::min<std::size_t>(threads, n);
  pool.reserve(count);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)), values_(labels_.size() * labels_.size(), 0.0) {}

bool DistanceMatrix::is_symmetric() const noexcept {
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

DistanceMatrix fcd_matrix(std::span<const Dictionary> dictionaries,
                          std::vector<std::string> labels, unsigned threads) {
  if (labels.size() != dictionaries.size()) {
    throw PreconditionError("fcd_matrix: label count does not match dictionaries");
  }
  for (std::size_t i = 0; i < dictionaries.size(); ++i) {
    if (dictionaries[i].empty()) {
      throw UndefinedDistanceError("document '" + labels[i] +
                                   "' has an empty dictionary");
    }
  }
  DistanceMatrix m(std::move(labels));
  const std::size_t n = m.size();
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = i == j ? 0.0 : fcd(dictionaries[i], dictionaries[j]);
    }
  });
  return m;
}

DistanceMatrix ncd_matrix(std::span<const std::string> texts,
                          std::vector<std::string> labels, unsigned threads) {
  if (labels.size() != texts.size()) {
    throw PreconditionError("ncd_matrix: label count does not match texts");
  }
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (texts[i].empty()) {
      throw UndefinedDistanceError("document '" + labels[i] + "' is empty");
    }
  }
  DistanceMatrix m(std::move(labels));
  const std::size_t n = m.size();
  std::vector<std::size_t> single(n);
  parallel_for(n, threads, [&](std::size_t i) { single[i] = compress_size(texts[i]); });
  parallel_for(n * n, threads, [&](std::size_t cell) {
    const std::size_t i = cell / n, j = cell % n;
    std::string joined;
    joined.reserve(texts[i].size() + texts[j].size());
    joined.append(texts[i]).append(texts[j]);
    m(i, j) = ncd_from_sizes(single[i], single[j], compress_size(joined));
  });
  return m;
}

DistanceMatrix build_matrix(const CorpusIndex& corpus, Measure measure,
                            unsigned threads) {
  if (corpus.documents.empty()) throw ConfigError("corpus is empty");
  const std::size_t n = corpus.documents.size();
  std::vector<std::string> labels;
  for (const auto& d : corpus.documents) labels.push_back(d.doc_id);

  if (measure == Measure::kFcd) {
    std::vector<Dictionary> dicts(n);
    parallel_for(n, threads, [&](std::size_t i) {
      const auto& doc = corpus.documents[i];
      if (!std::filesystem::exists(doc.dictionary_path)) {
        throw IoError("document '" + doc.doc_id + "': dictionary " +
                      doc.dictionary_path.string() + " not found");
      }
      dicts[i] = load_dictionary(doc.dictionary_path);
    });
    return fcd_matrix(dicts, std::move(labels), threads);
  }

  std::vector<std::string> texts(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const auto& doc = corpus.documents[i];
    texts[i] = read_file(doc.text_path);
    require_utf8(texts[i], doc.text_path.string());
  });
  return ncd_matrix(texts, std::move(labels), threads);
}

DistanceMatrix symmetrize(const DistanceMatrix& m) {
  DistanceMatrix out = m;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const double v = std::max(m(i, j), m(j, i));
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

void write_matrix_csv(const DistanceMatrix& m, std::ostream& out) {
  out << "id";
  for (const auto& label : m.labels()) {
    out << ',';
    write_field(out, label);
  }
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < m.size(); ++i) {
    write_field(out, m.labels()[i]);
    for (std::size_t j = 0; j < m.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.6f", m(i, j));
      out << ',' << buf;
    }
    out << '\n';
  }
}

DistanceMatrix read_matrix_csv(std::istream& in, std::string_view source) {
  const std::string src(source);
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };

  if (!next_line()) throw FormatError(src + ": empty matrix file");
  auto header = parse_record(line, source, line_no);
  if (header.empty() || header.front() != "id") {
    throw FormatError(src + ": first header cell must be 'id'");
  }
  header.erase(header.begin());
  const std::size_t n = header.size();
  DistanceMatrix m(header);

  std::size_t row = 0;
  while (next_line()) {
    const auto fields = parse_record(line, source, line_no);
    if (row >= n) {
      throw FormatError(src + ": matrix is not square: " + std::to_string(n) +
                        " columns but more than " + std::to_string(n) + " rows");
    }
    if (fields.size() != n + 1) {
      throw FormatError(src + ":" + std::to_string(line_no) +
                        ": matrix is not square: row has " +
                        std::to_string(fields.size() - 1) + " values, expected " +
                        std::to_string(n));
    }
    if (fields[0] != header[row]) {
      throw FormatError(src + ":" + std::to_string(line_no) + ": row label '" +
                        fields[0] + "' does not match column '" + header[row] + "'");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const std::string& cell = fields[j + 1];
      double v = 0;
      const auto* end = cell.data() + cell.size();
      const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
      if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw FormatError(src + ":" + std::to_string(line_no) + ": bad value '" +
                          cell + "'");
      }
      m(row, j) = v;
    }
    ++row;
  }
  if (row != n) {
    throw FormatError(src + ": matrix is not square: " + std::to_string(row) +
                      " rows, " + std::to_string(n) + " columns");
  }
  return m;
}

}  // namespace fcd
