#pragma once

#include <intform/atlas.hpp>
#include <intform/berezin.hpp>
#include <intform/cohomology.hpp>
#include <intform/error.hpp>
#include <intform/laurent.hpp>
#include <intform/linalg.hpp>
#include <intform/monomial.hpp>
#include <intform/parse.hpp>
#include <intform/rational.hpp>
#include <intform/superform.hpp>
