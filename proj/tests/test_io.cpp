#include <cstdio>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "hyperlat/io.hpp"

using namespace hyperlat;

TEST_CASE("float formatting: significance, locale independence, JSON validity") {
  CHECK(io::fmt_double(1.0) == "1");
  CHECK(io::fmt_double(0.5) == "0.5");
  CHECK(io::fmt_double(-0.0) == "0");
  CHECK(io::fmt_double(1.0 / 3.0) == "0.333333333333");
  CHECK(io::fmt_double(123456789012345.0).find(',') == std::string::npos);
  CHECK(io::fmt_double(0.1, 3) == "0.1");
  // Round-trip at 12 significant digits.
  double v = 3.14159265358979;
  CHECK(std::stod(io::fmt_double(v)) == doctest::Approx(v).epsilon(1e-11));
  CHECK_THROWS(io::fmt_double(std::numeric_limits<double>::infinity()));
}

TEST_CASE("json object builder") {
  io::JsonObj o;
  o.str("name", "a\"b\\c\n").num("n", std::uint64_t{42}).num("x", 0.25).boolean(
      "flag", true);
  CHECK(o.line() ==
        "{\"name\":\"a\\\"b\\\\c\\n\",\"n\":42,\"x\":0.25,\"flag\":true}");
}

TEST_CASE("csv document layout") {
  io::JsonObj h;
  h.str("tool", "t");
  io::CsvDoc doc(h.line(), {"a", "b"});
  doc.add_row({"1", "2"});
  doc.add_row({"3", "4"});
  CHECK(doc.str() == "# {\"tool\":\"t\"}\na,b\n1,2\n3,4\n");
  CHECK_THROWS(doc.add_row({"only-one"}));
}

TEST_CASE("file emission round trip") {
  std::string path = "io_test_tmp.csv";
  io::write_text_file(path, "x,y\n1,2\n");
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == "x,y\n1,2\n");
  std::remove(path.c_str());
  CHECK_THROWS(io::write_text_file("/nonexistent-dir/f.csv", "x"));
}
