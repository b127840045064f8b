package org.apache.commons.codec.binary;

import static org.junit.Assert.assertEquals;
import static org.junit.Assert.fail;

import java.math.BigInteger;

import org.junit.Test;

public class Base64Test {

    @Test
    public void encodesSmallInteger() {
        BigInteger big = BigInteger.valueOf(42);
        byte[] encoded = Base64.encodeInteger(big);
        assertEquals(4, encoded.length);
    }

    @Test
    public void rejectsNull() {
        try {
            Base64.encodeInteger(null);
            fail();
        } catch (NullPointerException expected) {
        }
    }
}
