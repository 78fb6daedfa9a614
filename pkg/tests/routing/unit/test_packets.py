import pytest
from src.routing.domain import QueryPacket, ReplyPacket

def test_query_packet_walks_its_route():
    packet = QueryPacket(route=(0, 1, 2, 3), payload=b"q")
    assert packet.sealing_key_id() == "bR_key:0"
    assert packet.advance() == 1
    assert packet.sealing_key_id() == "bR_key:1"
    packet.advance()
    packet.advance()
    assert packet.at_end
    with pytest.raises(IndexError):
        packet.next_hop

def test_reply_packet_uses_forward_keys():
    packet = ReplyPacket(route=(3, 2, 0), payload=b"r")
    assert packet.sealing_key_id() == "fR_key:3"
