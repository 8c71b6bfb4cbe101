#pragma once

#include <qlocal/field.hpp>
#include <qlocal/matrix.hpp>
#include <qlocal/quiver.hpp>
#include <qlocal/ncpoly.hpp>
#include <qlocal/text.hpp>
#include <qlocal/presentation.hpp>
#include <qlocal/rewrite.hpp>
#include <qlocal/extcalc.hpp>
#include <qlocal/repvariety.hpp>
#include <qlocal/deform.hpp>
#include <qlocal/structure.hpp>
#include <qlocal/session.hpp>
