from clb.witness.witness import BlockWitness, WitnessReport, witness_block, witness_global

__all__ = ["BlockWitness", "WitnessReport", "witness_block", "witness_global"]
