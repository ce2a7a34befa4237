#ifndef QSEMI_HPP
#define QSEMI_HPP

#include "qsemi/poly.hpp"
#include "qsemi/matrix.hpp"
#include "qsemi/quiver.hpp"
#include "qsemi/random.hpp"
#include "qsemi/routes.hpp"
#include "qsemi/blockdet.hpp"
#include "qsemi/group.hpp"
#include "qsemi/linsolve.hpp"
#include "qsemi/domzub.hpp"
#include "qsemi/fixtures.hpp"
#include "qsemi/verify.hpp"
#include "qsemi/cli.hpp"

#endif
