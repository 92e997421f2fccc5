#include "tcclab/bracket.hpp"

#include <atomic>
#include <cctype>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

namespace tcclab {

namespace {

bool is_word_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '[' && c != ']' &&
         c != '{' && c != '}' && c != '~' && c != ',' && c != '#';
}

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line = 1;
  std::size_t col = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line, col);
  }

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_space_and_comments() {
    while (!eof()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (peek() == '#') {
        while (!eof() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  void expect(char c, const std::string& what) {
    skip_space_and_comments();
    if (eof() || peek() != c) fail("expected '" + std::string(1, c) + "' " + what);
    advance();
  }

  std::string word(const std::string& what) {
    skip_space_and_comments();
    std::size_t start = pos;
    while (!eof() && is_word_char(peek())) advance();
    if (pos == start) fail("expected " + what);
    return std::string(text.substr(start, pos - start));
  }
};

// Mutable parse tree; chains are resolved on this before the immutable term
// is built.
struct Ast {
  bool leaf = false;
  std::string word;
  FeatureSet features;
  bool wrote_features = false;
  std::optional<std::string> label;
  std::unique_ptr<Ast> left, right;
  bool copy = false;
  std::size_t start = 0;

  std::optional<ChainId> chain;
  bool lower = false;
};

FeatureSet parse_features(Cursor& c) {
  FeatureSet out;
  c.advance();  // consume '{'
  while (true) {
    c.skip_space_and_comments();
    if (c.eof()) c.fail("unterminated feature set");
    char sign = c.peek();
    if (sign != '+' && sign != '-')
      c.fail("unknown feature syntax: expected '+' or '-'");
    c.advance();
    std::string name = c.word("feature name");
    out.set({name, sign == '+' ? Polarity::Plus : Polarity::Minus});
    c.skip_space_and_comments();
    if (c.eof()) c.fail("unterminated feature set");
    if (c.peek() == ',') {
      c.advance();
      continue;
    }
    if (c.peek() == '}') {
      c.advance();
      return out;
    }
    c.fail("unknown feature syntax: expected ',' or '}'");
  }
}

std::unique_ptr<Ast> parse_so(Cursor& c) {
  c.skip_space_and_comments();
  if (c.eof()) c.fail("unexpected end of input");
  auto ast = std::make_unique<Ast>();
  ast->start = c.pos;

  if (c.peek() == '~') {
    c.advance();
    ast = parse_so(c);
    ast->copy = true;
    c.skip_space_and_comments();
    if (c.eof() || c.peek() != '~') c.fail("unterminated copy: expected '~'");
    c.advance();
    return ast;
  }

  if (c.peek() == '[') {
    c.advance();
    c.skip_space_and_comments();
    if (!c.eof() && c.peek() == '_') {
      c.advance();
      ast->label = c.word("label");
    }
    ast->left = parse_so(c);
    ast->right = parse_so(c);
    c.skip_space_and_comments();
    if (c.eof()) c.fail("unbalanced brackets: expected ']'");
    if (c.peek() != ']')
      c.fail("expected ']': a node has exactly two daughters");
    c.advance();
    return ast;
  }

  if (c.peek() == ']') c.fail("empty or short bracket: a node has exactly two daughters");

  ast->leaf = true;
  ast->word = c.word("atom");
  if (!c.eof() && c.peek() == '{') {
    ast->features = parse_features(c);
    ast->wrote_features = true;
  }
  return ast;
}

// -- chain resolution --------------------------------------------------------

void preorder(Ast* a, std::vector<Ast*>& out) {
  out.push_back(a);
  if (!a->leaf) {
    preorder(a->left.get(), out);
    preorder(a->right.get(), out);
  }
}

bool ast_equal(const Ast* a, const Ast* b) {
  if (a->leaf != b->leaf) return false;
  if (a->leaf) {
    return a->word == b->word && a->features == b->features;
  }
  return a->label == b->label && ast_equal(a->left.get(), b->left.get()) &&
         ast_equal(a->right.get(), b->right.get());
}

bool copy_matches(const Ast* copy, const Ast* cand) {
  if (copy->leaf) {
    if (!cand->leaf || cand->word != copy->word) return false;
    return !copy->wrote_features || cand->features == copy->features;
  }
  return !cand->leaf && ast_equal(copy, cand);
}

std::atomic<ChainId> g_parse_chain_counter{1u << 24};

void resolve_chains(Ast* root) {
  std::vector<Ast*> nodes;
  preorder(root, nodes);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Ast* n = nodes[i];
    if (!n->copy) continue;
    Ast* antecedent = nullptr;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      Ast* cand = nodes[j];
      if (cand->start >= n->start || cand->copy) continue;
      if (!copy_matches(n, cand)) continue;
      if (!antecedent || cand->start < antecedent->start) antecedent = cand;
    }
    if (!antecedent)
      throw ParseError("copy '~...~' has no earlier matching antecedent");
    if (!antecedent->chain) {
      antecedent->chain = g_parse_chain_counter.fetch_add(1);
      antecedent->lower = false;
    }
    n->chain = antecedent->chain;
    n->lower = true;
    if (n->leaf && !n->wrote_features) n->features = antecedent->features;
  }
}

// -- build -------------------------------------------------------------------

SoPtr build(const Ast* a) {
  SoPtr so;
  if (a->leaf) {
    LexicalItem item;
    if (is_category_symbol(a->word)) {
      item.category = a->word;  // covert head, empty phon
    } else {
      item.phon = a->word;
    }
    item.features = a->features;
    so = SyntacticObject::make_leaf(std::move(item));
  } else {
    std::optional<Label> label;
    if (a->label) label = Label{*a->label, std::nullopt};
    so = SyntacticObject::make_node(build(a->left.get()), build(a->right.get()),
                                    std::move(label));
  }
  if (a->chain) so = so->with_chain(*a->chain, a->lower);
  return so;
}

}  // namespace

SoPtr parse_bracket(std::string_view text) {
  Cursor c{text};
  auto ast = parse_so(c);
  c.skip_space_and_comments();
  if (!c.eof()) c.fail("trailing input after the structure (one per file)");
  resolve_chains(ast.get());
  return build(ast.get());
}

SoPtr parse_bracket_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  return parse_bracket(text);
}

namespace {

void print_features(const FeatureSet& fs, std::string& out) {
  if (fs.empty()) return;
  out += '{';
  bool first = true;
  for (const auto& f : fs.items()) {
    if (!first) out += ',';
    first = false;
    out += f.polarity == Polarity::Plus ? '+' : '-';
    out += f.name;
  }
  out += '}';
}

struct Printer {
  // per chain, the preorder index of its first occurrence: that one prints
  // plain, every other member struck through (the notation resolves copies
  // to the leftmost earlier antecedent, so the antecedent must come first)
  std::map<ChainId, std::size_t> first_of_chain;
  std::size_t preorder = 0;

  void index(const SoPtr& so) {
    if (so->chain()) first_of_chain.try_emplace(*so->chain(), preorder);
    ++preorder;
    if (!so->is_leaf()) {
      index(so->left());
      index(so->right());
    }
  }

  void print(const SoPtr& so, std::string& out) {
    bool struck =
        so->chain() && first_of_chain.at(*so->chain()) != preorder;
    ++preorder;
    if (struck) out += '~';
    if (so->is_leaf()) {
      const auto& it = so->item();
      if (it.phon.empty() && it.category)
        out += *it.category;
      else
        out += it.phon;
      print_features(it.features, out);
    } else {
      out += '[';
      if (so->label()) {
        out += '_';
        out += so->label()->category;
        out += ' ';
      }
      print(so->left(), out);
      out += ' ';
      print(so->right(), out);
      out += ']';
    }
    if (struck) out += '~';
  }
};

}  // namespace

std::string print_bracket(const SoPtr& so) {
  Printer p;
  p.index(so);
  p.preorder = 0;
  std::string out;
  p.print(so, out);
  return out;
}

}  // namespace tcclab
