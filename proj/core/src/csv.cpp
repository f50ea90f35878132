#include "loam/csv.hpp"

#include <charconv>
#include <map>
#include <utility>

#include "loam/errors.hpp"

namespace loam {

namespace {

struct Field {
  std::string text;
  bool quoted = false;
};

struct Row {
  std::vector<Field> fields;
  int line = 0;  // 1-based line the row starts on
};

void trim(std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) {
    s.clear();
    return;
  }
  const auto last = s.find_last_not_of(" \t");
  s = s.substr(first, last - first + 1);
}

// Comma-separated rows with double-quote escaping and CRLF/LF line ends.
// Unquoted fields are trimmed of surrounding blanks; quoted fields are
// taken verbatim.
std::vector<Row> tokenize(std::string_view text) {
  std::vector<Row> rows;
  Row row;
  row.line = 1;
  Field field;
  int line = 1;
  enum class State { field_start, unquoted, quoted, after_quote };
  State state = State::field_start;

  const auto end_field = [&]() {
    if (!field.quoted) trim(field.text);
    row.fields.push_back(std::move(field));
    field = Field{};
  };
  const auto end_row = [&]() {
    end_field();
    const bool blank = row.fields.size() == 1 && !row.fields[0].quoted && row.fields[0].text.empty();
    if (!blank) rows.push_back(std::move(row));
    row = Row{};
    row.line = line;
  };

  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (state == State::quoted) {
      if (ch == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          field.text.push_back('"');
          ++pos;
        } else {
          state = State::after_quote;
        }
      } else {
        if (ch == '\n') ++line;
        field.text.push_back(ch);
      }
      continue;
    }
    if (ch == '\r') {
      if (pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
      ++line;
      end_row();
      state = State::field_start;
      continue;
    }
    if (ch == '\n') {
      ++line;
      end_row();
      state = State::field_start;
      continue;
    }
    if (ch == ',') {
      end_field();
      state = State::field_start;
      continue;
    }
    switch (state) {
      case State::field_start:
        if (ch == '"') {
          field.quoted = true;
          state = State::quoted;
        } else {
          field.text.push_back(ch);
          state = State::unquoted;
        }
        break;
      case State::unquoted:
        field.text.push_back(ch);
        break;
      case State::after_quote:
        if (ch != ' ' && ch != '\t') {
          throw ParseError("unexpected character after closing quote on line " +
                           std::to_string(line));
        }
        break;
      case State::quoted:
        break;
    }
  }
  if (state == State::quoted) {
    throw ParseError("unterminated quoted field at end of input (row starting on line " +
                     std::to_string(row.line) + ")");
  }
  if (!field.text.empty() || field.quoted || !row.fields.empty()) end_row();
  return rows;
}

int parse_replicate(const Field& f, int line) {
  int value = 0;
  const auto [p, ec] = std::from_chars(f.text.data(), f.text.data() + f.text.size(), value);
  if (ec != std::errc{} || p != f.text.data() + f.text.size() || value < 1) {
    throw ParseError("replicate must be a positive integer, got \"" + f.text + "\" on line " +
                     std::to_string(line));
  }
  return value;
}

double parse_value(const Field& f, std::string_view column, int line) {
  double value = 0.0;
  const auto [p, ec] = std::from_chars(f.text.data(), f.text.data() + f.text.size(), value);
  if (ec != std::errc{} || p != f.text.data() + f.text.size()) {
    throw ParseError(std::string(column) + " must be a number, got \"" + f.text + "\" on line " +
                     std::to_string(line));
  }
  return value;
}

struct Header {
  std::map<std::string, std::size_t> columns;  // name -> index
  std::vector<std::string> names;              // in file order
};

Header read_header(const std::vector<Row>& rows) {
  if (rows.empty()) throw ParseError("empty input, expected a header line");
  Header h;
  for (std::size_t i = 0; i < rows[0].fields.size(); ++i) {
    const std::string& name = rows[0].fields[i].text;
    if (name.empty()) throw ParseError("empty column name in header (line 1)");
    if (!h.columns.emplace(name, i).second) {
      throw ParseError("duplicate column \"" + name + "\" in header (line 1)");
    }
    h.names.push_back(name);
  }
  return h;
}

std::size_t require_column(const Header& h, const std::string& name) {
  const auto it = h.columns.find(name);
  if (it == h.columns.end()) {
    throw ParseError("header is missing the \"" + name + "\" column (line 1)");
  }
  return it->second;
}

void check_width(const Row& row, std::size_t expected) {
  if (row.fields.size() != expected) {
    throw ParseError("expected " + std::to_string(expected) + " fields, got " +
                     std::to_string(row.fields.size()) + " on line " + std::to_string(row.line));
  }
}

std::string format_double(double v) {
  char buf[32];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

std::string quote_if_needed(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos && !s.empty() && s.front() != ' ' &&
      s.back() != ' ') {
    return std::string(s);
  }
  std::string out = "\"";
  for (char ch : s) {
    out.push_back(ch);
    if (ch == '"') out.push_back('"');
  }
  out.push_back('"');
  return out;
}

}  // namespace

LongCsv parse_long_csv(std::string_view text) {
  const std::vector<Row> rows = tokenize(text);
  const Header header = read_header(rows);
  const std::size_t col_subject = require_column(header, "subject");
  const std::size_t col_observer = require_column(header, "observer");
  const std::size_t col_replicate = require_column(header, "replicate");
  const std::size_t col_value = require_column(header, "value");
  const auto method_it = header.columns.find("method");
  for (const std::string& name : header.names) {
    if (name != "subject" && name != "observer" && name != "replicate" && name != "value" &&
        name != "method") {
      throw ParseError("unexpected column \"" + name + "\" in long-format header (line 1)");
    }
  }

  LongCsv out;
  out.records.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const Row& row = rows[r];
    check_width(row, header.names.size());
    LongRecord rec;
    rec.subject = row.fields[col_subject].text;
    rec.observer = row.fields[col_observer].text;
    rec.replicate = parse_replicate(row.fields[col_replicate], row.line);
    rec.value = parse_value(row.fields[col_value], "value", row.line);
    if (method_it != header.columns.end()) {
      const std::string& m = row.fields[method_it->second].text;
      if (r == 1) {
        out.method = m;
      } else if (m != out.method) {
        throw ParseError("method column holds more than one value (line " +
                         std::to_string(row.line) +
                         "); a long-format file carries a single method");
      }
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

WideCsv parse_wide_csv(std::string_view text) {
  const std::vector<Row> rows = tokenize(text);
  const Header header = read_header(rows);
  const std::size_t col_subject = require_column(header, "subject");
  const std::size_t col_observer = require_column(header, "observer");
  const std::size_t col_replicate = require_column(header, "replicate");

  WideCsv out;
  std::size_t col_x = 0;
  std::size_t col_y = 0;
  int found = 0;
  for (std::size_t i = 0; i < header.names.size(); ++i) {
    const std::string& name = header.names[i];
    if (name == "subject" || name == "observer" || name == "replicate") continue;
    if (found == 0) {
      col_x = i;
      out.method_x = name;
    } else if (found == 1) {
      col_y = i;
      out.method_y = name;
    }
    ++found;
  }
  if (found != 2) {
    throw ParseError("wide format needs exactly two method columns besides "
                     "subject/observer/replicate, found " +
                     std::to_string(found) + " (line 1)");
  }

  out.records_x.reserve(rows.size() - 1);
  out.records_y.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const Row& row = rows[r];
    check_width(row, header.names.size());
    LongRecord rec;
    rec.subject = row.fields[col_subject].text;
    rec.observer = row.fields[col_observer].text;
    rec.replicate = parse_replicate(row.fields[col_replicate], row.line);
    rec.value = parse_value(row.fields[col_x], out.method_x, row.line);
    out.records_x.push_back(rec);
    rec.value = parse_value(row.fields[col_y], out.method_y, row.line);
    out.records_y.push_back(std::move(rec));
  }
  return out;
}

std::string write_long_csv(const MeasurementGrid& grid) {
  std::string out = "subject,observer,replicate,value\n";
  for (const LongRecord& rec : grid.to_long()) {
    out += quote_if_needed(rec.subject);
    out.push_back(',');
    out += quote_if_needed(rec.observer);
    out.push_back(',');
    out += std::to_string(rec.replicate);
    out.push_back(',');
    out += format_double(rec.value);
    out.push_back('\n');
  }
  return out;
}

std::string write_wide_csv(const MeasurementGrid& grid_x, const MeasurementGrid& grid_y,
                           std::string_view method_x, std::string_view method_y) {
  if (grid_x.design() != grid_y.design()) {
    throw MismatchedDesign("the two grids have different designs");
  }
  std::string out = "subject,observer,replicate," + quote_if_needed(method_x) + "," +
                    quote_if_needed(method_y) + "\n";
  const Design& d = grid_x.design();
  for (int i = 0; i < d.subjects; ++i) {
    for (int j = 0; j < d.observers; ++j) {
      for (int k = 0; k < d.replicates; ++k) {
        out += quote_if_needed(grid_x.subject_labels()[static_cast<std::size_t>(i)]);
        out.push_back(',');
        out += quote_if_needed(grid_x.observer_labels()[static_cast<std::size_t>(j)]);
        out.push_back(',');
        out += std::to_string(k + 1);
        out.push_back(',');
        out += format_double(grid_x.value(i, j, k));
        out.push_back(',');
        out += format_double(grid_y.value(i, j, k));
        out.push_back('\n');
      }
    }
  }
  return out;
}

}  // namespace loam
