# tests/test_clustering.py

from collections import Counter

import pytest

from config.costos import calcular_costo_migracion
from src.models.clustering import InteractionLedger, LpMap, migration_round, partition_static
from src.utils.validators import InvariantViolation


def test_particion_n4_l2():
    assert partition_static(4, 2).asignacion.tolist() == [0, 0, 1, 1]


def test_particion_n5_l2():
    poblaciones = partition_static(5, 2).poblaciones().tolist()
    assert sorted(poblaciones) == [2, 3]


def test_particion_n200_l4():
    assert partition_static(200, 4).poblaciones().tolist() == [50, 50, 50, 50]


def test_entidades_de_en_orden():
    mapa = LpMap([1, 0, 1, 0], 2)
    assert mapa.entidades_de(1) == [0, 2]


def _ledger_entidad_cero(n=4, window=5):
    ledger = InteractionLedger(n, window)
    ledger.iniciar_paso(0)
    ledger.registrar(0, Counter({(0, 2): 10, (0, 1): 2}))
    return ledger


def test_migra_hacia_el_lp_que_mas_atrae():
    mapa = partition_static(4, 2)
    movimientos = migration_round(_ledger_entidad_cero(), mapa, delta=0.2, theta=1.5)
    assert movimientos == [(0, 0, 1)]
    assert mapa.lp_de(0) == 1


def test_tope_de_carga_rechaza_la_propuesta():
    mapa = partition_static(4, 2)
    movimientos = migration_round(_ledger_entidad_cero(), mapa, delta=0.0, theta=1.5)
    assert movimientos == []
    assert mapa.asignacion.tolist() == [0, 0, 1, 1]


def test_sin_atraccion_no_hay_migraciones():
    ledger = InteractionLedger(4, 5)
    ledger.registrar(0, Counter({(0, 1): 5, (1, 0): 5, (2, 3): 5, (3, 2): 5}))
    mapa = partition_static(4, 2)
    assert migration_round(ledger, mapa, delta=0.5, theta=1.5) == []


def test_umbral_theta():
    ledger = InteractionLedger(4, 5)
    ledger.registrar(0, Counter({(0, 2): 3, (0, 1): 2}))
    # 3 > 1.5 * 2 es falso
    assert migration_round(ledger, partition_static(4, 2), delta=1.0, theta=1.5) == []


def test_orden_por_ganancia():
    ledger = InteractionLedger(6, 5)
    ledger.registrar(0, Counter({(0, 4): 4, (1, 4): 9}))
    mapa = partition_static(6, 2)
    # tope ⌈1.2·6/2⌉ = 4: solo entra la propuesta de mayor ganancia
    assert migration_round(ledger, mapa, delta=0.2, theta=1.5) == [(1, 0, 1)]


def test_ventana_descarta_pasos_viejos():
    ledger = InteractionLedger(4, 2)
    ledger.iniciar_paso(0)
    ledger.registrar(0, Counter({(0, 2): 10}))
    ledger.iniciar_paso(1)
    ledger.iniciar_paso(2)
    assert ledger.totales_por_lp(partition_static(4, 2)).sum() == 0


def test_totales_usan_el_mapa_vigente():
    ledger = InteractionLedger(4, 3)
    ledger.registrar(0, Counter({(0, 3): 4}))
    mapa = partition_static(4, 2)
    assert ledger.totales_por_lp(mapa)[0].tolist() == [0, 4]
    mapa.mover(3, 0)
    assert ledger.totales_por_lp(mapa)[0].tolist() == [4, 0]


def test_verificar_tope():
    mapa = LpMap([0, 0, 0, 1], 2)
    with pytest.raises(InvariantViolation):
        mapa.verificar_tope(2)


def test_costo_de_migracion():
    assert calcular_costo_migracion(4, 10) == 64 + 4 * 8 + 10 * 16
    assert calcular_costo_migracion(4, 10, 2, 1) == 64 + 32 + 160 + 24 + 24
