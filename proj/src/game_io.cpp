#include "csg/game_io.hpp"

#include <cctype>
#include <numeric>

#include "csg/errors.hpp"

namespace csg {

namespace {

void append_list(std::string& out, const std::vector<int>& values) {
  out.push_back('[');
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i)
      out.push_back(',');
    out += std::to_string(values[i]);
  }
  out.push_back(']');
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void expect(std::string_view token) {
    if (text_.substr(pos_, token.size()) != token)
      fail("expected '" + std::string(token) + "'");
    pos_ += token.size();
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  int integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_ || pos_ - start > 9)
      fail("expected a non-negative integer");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  std::vector<int> list() {
    std::vector<int> out;
    expect("[");
    if (!peek(']')) {
      out.push_back(integer());
      while (peek(',')) {
        expect(",");
        out.push_back(integer());
      }
    }
    expect("]");
    return out;
  }

  void finish() const {
    if (pos_ != text_.size())
      fail("trailing characters");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("malformed game text at offset " + std::to_string(pos_) + ": " + what);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_text(const TypedGame& game) {
  std::string out = "csg n=" + std::to_string(game.voters()) + " t=" +
                    std::to_string(game.types()) + " r=" + std::to_string(game.num_rows()) +
                    "; nvec=";
  append_list(out, game.class_sizes());
  out += "; M=[";
  for (std::size_t i = 0; i < game.rows().size(); ++i) {
    if (i)
      out.push_back(',');
    append_list(out, game.rows()[i]);
  }
  out.push_back(']');
  return out;
}

TypedGame game_from_text(std::string_view text) {
  Cursor c(text);
  c.expect("csg n=");
  int n = c.integer();
  c.expect(" t=");
  int t = c.integer();
  c.expect(" r=");
  int r = c.integer();
  c.expect("; nvec=");
  auto sizes = c.list();
  c.expect("; M=[");
  std::vector<CoalitionProfile> rows;
  if (!c.peek(']')) {
    rows.push_back(c.list());
    while (c.peek(',')) {
      c.expect(",");
      rows.push_back(c.list());
    }
  }
  c.expect("]");
  c.finish();
  if (static_cast<int>(sizes.size()) != t || static_cast<int>(rows.size()) != r)
    throw InvalidInput("game text header t/r disagrees with its body");
  if (std::accumulate(sizes.begin(), sizes.end(), 0) != n)
    throw InvalidInput("game text header n disagrees with nvec");
  return TypedGame(std::move(sizes), std::move(rows));
}

nlohmann::json to_json(const TypedGame& game) {
  nlohmann::json j;
  j["n"] = game.voters();
  j["nvec"] = game.class_sizes();
  j["M"] = game.rows();
  return j;
}

TypedGame game_from_json(const nlohmann::json& j) {
  try {
    auto sizes = j.at("nvec").get<std::vector<int>>();
    auto rows = j.at("M").get<std::vector<CoalitionProfile>>();
    TypedGame game(std::move(sizes), std::move(rows));
    if (j.contains("n") && j.at("n").get<int>() != game.voters())
      throw InvalidInput("game JSON field n disagrees with nvec");
    return game;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed game JSON: ") + e.what());
  }
}

}  // namespace csg
