#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include "torcert/geometry.hpp"
using namespace torcert;
TEST_CASE("placeholder") { CHECK(orient3({0,0,0},{1,0,0},{0,1,0},{0,0,1}) != 0); }
